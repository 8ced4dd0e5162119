#pragma once

#include <stdexcept>

namespace geomis {

/// Bad arguments or a precondition violated by the caller (CLI exit code 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data failed validation, e.g. a malformed instance file (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact oracle declined an instance larger than its node limit.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geomis
