#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geomis/online.hpp"

namespace geomis {

/// Where each trial's instance comes from.
struct InstanceSource {
  std::string kind = "random_balls";  ///< file|random_balls|random_rects|random_graph|levels|star
  std::filesystem::path file;
  int n = 20;
  std::optional<int> dim;  ///< falls back to ExperimentConfig::dim
  double box_side = 10.0;
  double min_radius = 1.0;
  double max_radius = 1.0;
  std::optional<double> max_side;  ///< rect sides in [1, M]; falls back to ExperimentConfig::M
  double edge_probability = 0.3;
  int zeta = 1;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string algorithm = "firstfit";  ///< firstfit|filter|classify|hr_classify
  InstanceSource instance;
  int trials = 1;
  std::uint64_t base_seed = 0;
  double delta = 0.01;
  double M = 8.0;
  int dim = 3;
  bool regenerate_instance = false;  ///< fresh instance per trial (seeded from the trial seed)
  bool enumerate_classes = false;    ///< exact expectation over all classes
  bool oracle = true;
  int node_limit = 40;
  bool timing = false;  ///< fill time_ms; off keeps output byte-reproducible
  std::string output;

  /// Throws UsageError on unknown keys, wrong types or inconsistent values.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string alg;
  int n = 0;
  double alg_size = 0.0;
  std::optional<int> opt_size;  ///< empty when the oracle refused or was disabled
  std::optional<double> ratio;
  std::optional<double> time_ms;
};

struct ExperimentSummary {
  int trials = 0;
  double mean_alg = 0.0;
  double stderr_alg = 0.0;
  double ci_low = 0.0;   ///< mean - 3 stderr
  double ci_high = 0.0;  ///< mean + 3 stderr
  int ratio_count = 0;   ///< finite ratios included in mean_ratio
  double mean_ratio = 0.0;
  int infinite_ratios = 0;
  int oracle_refused = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
};

/// Runs all trials, in parallel when threads > 1, merged in trial order.
/// threads <= 0 means thread_count_from_env().
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 0);

ExperimentSummary summarize(std::span<const TrialRecord> records);

/// GEOMIS_THREADS if set and positive, otherwise hardware concurrency.
int thread_count_from_env();

inline constexpr const char* kCsvHeader = "trial,seed,alg,n,alg_size,opt_size,ratio,time_ms";
void write_csv(std::ostream& out, std::span<const TrialRecord> records);
nlohmann::json summary_to_json(const ExperimentSummary& summary);

}  // namespace geomis
