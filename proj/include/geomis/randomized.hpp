#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "geomis/lattice.hpp"
#include "geomis/online.hpp"
#include "geomis/rng.hpp"

namespace geomis {

/// Lattice-shift filter for unit balls.
///
/// A shift b is drawn uniformly from [0, 4+delta) x [0, 2 sqrt 3)^(d-1) when
/// the first ball arrives. A ball is considered only if its shifted centre is
/// covered by some lattice point p; among covered balls, the first one mapped
/// to each p is accepted. Covered balls intersect iff they share p, so this
/// is FirstFit on the covered subsequence.
class Filter final : public OnlineAlgorithm {
 public:
  Filter(LatticeParams params, std::uint64_t seed);

  /// Test hook: fixes the shift instead of drawing it.
  void force_shift(Point shift);

  std::string_view name() const override { return "filter"; }
  Decision decide(const ArrivalEvent& event) override;
  std::span<const int> accepted() const override { return accepted_; }

  const LatticeParams& params() const { return params_; }
  const std::optional<Point>& shift() const { return shift_; }
  /// Lattice cell of each arrival so far, empty when not covered.
  const std::vector<std::optional<CoeffVector>>& cells() const { return cells_; }

 private:
  LatticeParams params_;
  Rng rng_;
  std::optional<Point> shift_;
  std::map<CoeffVector, int> occupied_;
  std::vector<std::optional<CoeffVector>> cells_;
  std::vector<int> accepted_;
};

RunResult filter_alg(const ArrivalSequence& seq, const LatticeParams& params, std::uint64_t seed,
                     std::optional<Point> forced_shift = std::nullopt);

/// floor(log2 x) for x >= 1.
int floor_log2(double x);

/// Dyadic width classes [2^j, 2^(j+1)) for j = 0..floor(log2 M).
class ClassifyConfig {
 public:
  /// Throws UsageError unless M > 2.
  explicit ClassifyConfig(double max_width);

  double max_width() const { return max_width_; }
  int class_count() const { return floor_log2(max_width_) + 1; }
  /// Class of a width in [1, M]; throws UsageError outside that range.
  int class_of(double width) const;

 private:
  double max_width_;
};

/// Picks one width class uniformly at random (on first arrival) and runs
/// FirstFit on the objects of that class only.
class Classify final : public OnlineAlgorithm {
 public:
  Classify(ClassifyConfig config, std::uint64_t seed);

  void force_class(int j);

  std::string_view name() const override { return "classify"; }
  Decision decide(const ArrivalEvent& event) override;
  std::span<const int> accepted() const override { return inner_.accepted(); }

  const ClassifyConfig& config() const { return config_; }
  std::optional<int> chosen_class() const { return chosen_; }

 private:
  ClassifyConfig config_;
  Rng rng_;
  std::optional<int> chosen_;
  FirstFit inner_;
};

RunResult classify_alg(const ArrivalSequence& seq, const ClassifyConfig& config,
                       std::uint64_t seed, std::optional<int> forced_class = std::nullopt);

/// Per-axis dyadic side-length classes, (floor(log2 M) + 1)^d in total.
class HRClassifyConfig {
 public:
  HRClassifyConfig(double max_side, int dim);

  double max_side() const { return max_side_; }
  int dim() const { return dim_; }
  int classes_per_axis() const { return floor_log2(max_side_) + 1; }
  std::int64_t class_count() const;
  /// Throws UsageError if a side lies outside [1, M] or the dimension differs.
  std::vector<int> class_of(const HyperRectangle& rect) const;
  /// All class index vectors in lexicographic order.
  std::vector<std::vector<int>> all_classes() const;

 private:
  double max_side_;
  int dim_;
};

class HRClassify final : public OnlineAlgorithm {
 public:
  HRClassify(HRClassifyConfig config, std::uint64_t seed);

  void force_class(std::vector<int> indices);

  std::string_view name() const override { return "hr_classify"; }
  Decision decide(const ArrivalEvent& event) override;
  std::span<const int> accepted() const override { return inner_.accepted(); }

  const HRClassifyConfig& config() const { return config_; }
  const std::optional<std::vector<int>>& chosen_class() const { return chosen_; }

 private:
  HRClassifyConfig config_;
  Rng rng_;
  std::optional<std::vector<int>> chosen_;
  FirstFit inner_;
};

RunResult hr_classify_alg(const ArrivalSequence& seq, const HRClassifyConfig& config,
                          std::uint64_t seed,
                          std::optional<std::vector<int>> forced_class = std::nullopt);

/// Accepted-set size for every class choice (exact expectation = their mean).
std::vector<std::size_t> classify_sizes_by_class(const ArrivalSequence& seq,
                                                 const ClassifyConfig& config);
std::vector<std::size_t> hr_classify_sizes_by_class(const ArrivalSequence& seq,
                                                    const HRClassifyConfig& config);

double mean(const std::vector<std::size_t>& values);

}  // namespace geomis
