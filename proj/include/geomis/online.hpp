#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geomis/geometry.hpp"
#include "geomis/graph.hpp"

namespace geomis {

/// One online reveal: vertex `id` with its edges to earlier vertices.
struct ArrivalEvent {
  int id = 0;
  std::vector<int> neighbors;  ///< sorted, all < id
  std::optional<SizedObject> payload;
};

/// An online instance. Either every event carries a geometric payload of
/// dimension `dim` (and neighbours match the intersection graph) or none does.
struct ArrivalSequence {
  std::optional<int> dim;
  std::vector<ArrivalEvent> events;

  std::size_t size() const { return events.size(); }
  bool geometric() const { return dim.has_value(); }
  /// The full revealed graph.
  Graph graph() const;
  std::vector<SizedObject> objects() const;
};

/// Throws ValidationError describing the first broken invariant.
void validate(const ArrivalSequence& seq);

/// Events in object order with adjacency from the intersection predicate.
ArrivalSequence sequence_from_objects(std::span<const SizedObject> objects);
/// Abstract (payload-free) sequence revealing vertices 0..n-1 in order.
ArrivalSequence sequence_from_graph(const Graph& graph);
/// The first k events.
ArrivalSequence prefix(const ArrivalSequence& seq, std::size_t k);

enum class Decision : unsigned char { reject, accept };

/// Interface every online algorithm implements. One call per arrival;
/// `accepted()` must only ever grow by the id just decided.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string_view name() const = 0;
  virtual Decision decide(const ArrivalEvent& event) = 0;
  virtual std::span<const int> accepted() const = 0;
};

struct RunResult {
  std::vector<int> accepted;
  std::vector<Decision> decisions;
  bool valid_independent = true;
  bool valid_irrevocable = true;

  bool valid() const { return valid_independent && valid_irrevocable; }
  std::size_t size() const { return accepted.size(); }
};

/// Feeds events to an algorithm one at a time and audits its decisions.
class OnlineRunner {
 public:
  explicit OnlineRunner(OnlineAlgorithm& algorithm) : algorithm_(algorithm) {}

  /// Throws UsageError if the event id is out of order or references a
  /// vertex that has not been revealed.
  Decision feed(const ArrivalEvent& event);
  RunResult result() const;

 private:
  OnlineAlgorithm& algorithm_;
  std::vector<char> is_accepted_;
  RunResult result_;
};

RunResult run_online(OnlineAlgorithm& algorithm, const ArrivalSequence& seq);

/// Greedy: accept iff no already-accepted vertex is a neighbour.
class FirstFit final : public OnlineAlgorithm {
 public:
  std::string_view name() const override { return "firstfit"; }
  Decision decide(const ArrivalEvent& event) override;
  std::span<const int> accepted() const override { return accepted_; }

 private:
  std::vector<int> accepted_;
  std::vector<char> taken_;
};

/// Rejects everything; the degenerate deterministic baseline.
class AlwaysReject final : public OnlineAlgorithm {
 public:
  std::string_view name() const override { return "reject"; }
  Decision decide(const ArrivalEvent&) override { return Decision::reject; }
  std::span<const int> accepted() const override { return {}; }
};

RunResult first_fit(const ArrivalSequence& seq);

/// opt / alg with the conventions 0/0 = 1 and k/0 = +inf.
double empirical_ratio(double opt_size, double alg_size);
double empirical_ratio(int opt_size, const RunResult& result);

}  // namespace geomis
