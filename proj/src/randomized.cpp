#include "geomis/randomized.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "geomis/errors.hpp"

namespace geomis {

namespace {

const Ball& require_ball(const ArrivalEvent& event, const char* who) {
  if (!event.payload || !event.payload->is_ball()) {
    throw UsageError(std::string(who) + ": arrival " + std::to_string(event.id) +
                     " has no ball payload");
  }
  return event.payload->ball();
}

const HyperRectangle& require_rect(const ArrivalEvent& event, const char* who) {
  if (!event.payload || !event.payload->is_rect()) {
    throw UsageError(std::string(who) + ": arrival " + std::to_string(event.id) +
                     " has no hyper-rectangle payload");
  }
  return event.payload->rect();
}

void require_range(double value, double max, const char* what) {
  if (!(value >= 1.0 && value <= max)) {
    throw UsageError(std::string(what) + " " + std::to_string(value) + " outside [1, " +
                     std::to_string(max) + "]");
  }
}

}  // namespace

// ---------------------------------------------------------------- Filter

Filter::Filter(LatticeParams params, std::uint64_t seed) : params_(params), rng_(seed) {}

void Filter::force_shift(Point shift) {
  if (shift.dim() != params_.dim()) throw UsageError("filter shift dimension mismatch");
  shift_ = std::move(shift);
}

Decision Filter::decide(const ArrivalEvent& event) {
  const Ball& ball = require_ball(event, "filter");
  if (ball.radius() != 1.0) throw UsageError("filter only accepts unit balls");
  if (ball.dim() != params_.dim()) throw UsageError("filter: ball dimension mismatch");

  if (!shift_) {
    std::vector<double> b(static_cast<std::size_t>(params_.dim()));
    b[0] = rng_.uniform(0.0, params_.period_x1());
    for (std::size_t i = 1; i < b.size(); ++i) b[i] = rng_.uniform(0.0, LatticeParams::axis_step());
    shift_ = Point(std::move(b));
  }

  auto hit = parity_rounding(params_, ball.center() + *shift_);
  if (hit.distance > 1.0) {
    cells_.emplace_back(std::nullopt);
    return Decision::reject;
  }
  cells_.emplace_back(hit.coeffs);
  const auto [it, inserted] = occupied_.try_emplace(std::move(hit.coeffs), event.id);
  if (!inserted) return Decision::reject;
  accepted_.push_back(event.id);
  return Decision::accept;
}

RunResult filter_alg(const ArrivalSequence& seq, const LatticeParams& params, std::uint64_t seed,
                     std::optional<Point> forced_shift) {
  Filter alg(params, seed);
  if (forced_shift) alg.force_shift(std::move(*forced_shift));
  return run_online(alg, seq);
}

// ---------------------------------------------------------------- Classify

int floor_log2(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw UsageError("floor_log2 needs a finite x >= 1");
  return std::ilogb(x);
}

ClassifyConfig::ClassifyConfig(double max_width) : max_width_(max_width) {
  if (!(max_width > 2.0) || !std::isfinite(max_width)) {
    throw UsageError("classify needs M > 2");
  }
}

int ClassifyConfig::class_of(double width) const {
  require_range(width, max_width_, "width");
  return floor_log2(width);
}

Classify::Classify(ClassifyConfig config, std::uint64_t seed) : config_(config), rng_(seed) {}

void Classify::force_class(int j) {
  if (j < 0 || j >= config_.class_count()) throw UsageError("class index out of range");
  chosen_ = j;
}

Decision Classify::decide(const ArrivalEvent& event) {
  if (!event.payload) throw UsageError("classify: arrival has no payload");
  const int cls = config_.class_of(event.payload->width());
  if (!chosen_) chosen_ = static_cast<int>(rng_.below(static_cast<std::uint64_t>(config_.class_count())));
  if (cls != *chosen_) return Decision::reject;
  return inner_.decide(event);
}

RunResult classify_alg(const ArrivalSequence& seq, const ClassifyConfig& config,
                       std::uint64_t seed, std::optional<int> forced_class) {
  Classify alg(config, seed);
  if (forced_class) alg.force_class(*forced_class);
  return run_online(alg, seq);
}

// ---------------------------------------------------------------- HR-Classify

HRClassifyConfig::HRClassifyConfig(double max_side, int dim) : max_side_(max_side), dim_(dim) {
  if (!(max_side > 2.0) || !std::isfinite(max_side)) throw UsageError("hr_classify needs M > 2");
  if (dim < 1) throw UsageError("hr_classify needs dim >= 1");
}

std::int64_t HRClassifyConfig::class_count() const {
  std::int64_t n = 1;
  for (int i = 0; i < dim_; ++i) n *= classes_per_axis();
  return n;
}

std::vector<int> HRClassifyConfig::class_of(const HyperRectangle& rect) const {
  if (rect.dim() != dim_) throw UsageError("hr_classify: rectangle dimension mismatch");
  std::vector<int> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    require_range(rect.side(i), max_side_, "side length");
    out[static_cast<std::size_t>(i)] = floor_log2(rect.side(i));
  }
  return out;
}

std::vector<std::vector<int>> HRClassifyConfig::all_classes() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(dim_), 0);
  const int k = classes_per_axis();
  for (std::int64_t idx = 0; idx < class_count(); ++idx) {
    std::int64_t rest = idx;
    for (int i = dim_ - 1; i >= 0; --i) {
      cur[static_cast<std::size_t>(i)] = static_cast<int>(rest % k);
      rest /= k;
    }
    out.push_back(cur);
  }
  return out;
}

HRClassify::HRClassify(HRClassifyConfig config, std::uint64_t seed) : config_(config), rng_(seed) {}

void HRClassify::force_class(std::vector<int> indices) {
  if (static_cast<int>(indices.size()) != config_.dim()) throw UsageError("class dimension mismatch");
  for (int j : indices) {
    if (j < 0 || j >= config_.classes_per_axis()) throw UsageError("class index out of range");
  }
  chosen_ = std::move(indices);
}

Decision HRClassify::decide(const ArrivalEvent& event) {
  const auto cls = config_.class_of(require_rect(event, "hr_classify"));
  if (!chosen_) {
    std::vector<int> pick(static_cast<std::size_t>(config_.dim()));
    for (auto& j : pick) {
      j = static_cast<int>(rng_.below(static_cast<std::uint64_t>(config_.classes_per_axis())));
    }
    chosen_ = std::move(pick);
  }
  if (cls != *chosen_) return Decision::reject;
  return inner_.decide(event);
}

RunResult hr_classify_alg(const ArrivalSequence& seq, const HRClassifyConfig& config,
                          std::uint64_t seed, std::optional<std::vector<int>> forced_class) {
  HRClassify alg(config, seed);
  if (forced_class) alg.force_class(std::move(*forced_class));
  return run_online(alg, seq);
}

std::vector<std::size_t> classify_sizes_by_class(const ArrivalSequence& seq,
                                                 const ClassifyConfig& config) {
  std::vector<std::size_t> out;
  for (int j = 0; j < config.class_count(); ++j) {
    out.push_back(classify_alg(seq, config, 0, j).size());
  }
  return out;
}

std::vector<std::size_t> hr_classify_sizes_by_class(const ArrivalSequence& seq,
                                                    const HRClassifyConfig& config) {
  std::vector<std::size_t> out;
  for (auto& cls : config.all_classes()) {
    out.push_back(hr_classify_alg(seq, config, 0, std::move(cls)).size());
  }
  return out;
}

double mean(const std::vector<std::size_t>& values) {
  if (values.empty()) return 0.0;
  const auto total = std::accumulate(values.begin(), values.end(), std::size_t{0});
  return static_cast<double>(total) / static_cast<double>(values.size());
}

}  // namespace geomis
