#include "geomis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "geomis/adversaries.hpp"
#include "geomis/errors.hpp"
#include "geomis/instance_io.hpp"
#include "geomis/oracle.hpp"
#include "geomis/randomized.hpp"
#include "geomis/rng.hpp"

namespace geomis {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

InstanceSource instance_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("config 'instance' must be an object");
  InstanceSource src;
  for (const auto& [key, value] : doc.items()) {
    if (key == "kind") src.kind = get_as<std::string>(value, key);
    else if (key == "file") src.file = get_as<std::string>(value, key);
    else if (key == "n") src.n = get_as<int>(value, key);
    else if (key == "dim") src.dim = get_as<int>(value, key);
    else if (key == "box_side") src.box_side = get_as<double>(value, key);
    else if (key == "min_radius") src.min_radius = get_as<double>(value, key);
    else if (key == "max_radius") src.max_radius = get_as<double>(value, key);
    else if (key == "M") src.max_side = get_as<double>(value, key);
    else if (key == "p") src.edge_probability = get_as<double>(value, key);
    else if (key == "zeta") src.zeta = get_as<int>(value, key);
    else if (key == "seed") src.seed = get_as<std::uint64_t>(value, key);
    else throw UsageError("unknown instance key '" + key + "'");
  }
  return src;
}

bool needs_geometry(const std::string& algorithm) {
  return algorithm == "filter" || algorithm == "classify" || algorithm == "hr_classify";
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const ExperimentConfig& cfg, int dim,
                                                std::uint64_t seed) {
  if (cfg.algorithm == "firstfit") return std::make_unique<FirstFit>();
  if (cfg.algorithm == "filter") return std::make_unique<Filter>(LatticeParams(dim, cfg.delta), seed);
  if (cfg.algorithm == "classify") return std::make_unique<Classify>(ClassifyConfig(cfg.M), seed);
  return std::make_unique<HRClassify>(HRClassifyConfig(cfg.M, dim), seed);
}

ArrivalSequence build_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto& src = cfg.instance;
  const int dim = src.dim.value_or(cfg.dim);
  if (src.kind == "file") return load_instance(src.file);
  if (src.kind == "random_balls") {
    return random_balls_gen(src.n, dim, src.box_side, seed, src.min_radius, src.max_radius);
  }
  if (src.kind == "random_rects") {
    return random_rects_gen(src.n, dim, src.max_side.value_or(cfg.M), src.box_side, seed);
  }
  if (src.kind == "random_graph") return random_graph_gen(src.n, src.edge_probability, seed);
  if (src.kind == "levels") return level_graph_gen(src.zeta, seed);
  throw UsageError("unknown instance kind '" + src.kind + "'");
}

struct OptValue {
  std::optional<int> size;
  bool refused = false;
};

OptValue compute_opt(const ExperimentConfig& cfg, const ArrivalSequence& seq) {
  if (!cfg.oracle) return {};
  try {
    return {exact_mis(seq.graph(), cfg.node_limit).size, false};
  } catch (const OracleRefusal&) {
    return {std::nullopt, true};
  }
}

double run_algorithm(const ExperimentConfig& cfg, const ArrivalSequence& seq, std::uint64_t seed) {
  const int dim = seq.dim.value_or(cfg.dim);
  if (cfg.enumerate_classes && cfg.algorithm == "classify") {
    return mean(classify_sizes_by_class(seq, ClassifyConfig(cfg.M)));
  }
  if (cfg.enumerate_classes && cfg.algorithm == "hr_classify") {
    return mean(hr_classify_sizes_by_class(seq, HRClassifyConfig(cfg.M, dim)));
  }
  auto alg = make_algorithm(cfg, dim, seed);
  const RunResult run = run_online(*alg, seq);
  if (!run.valid()) throw ValidationError(cfg.algorithm + " produced an invalid run");
  return static_cast<double>(run.size());
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "algorithm") cfg.algorithm = get_as<std::string>(value, key);
    else if (key == "instance") cfg.instance = instance_from_json(value);
    else if (key == "trials") cfg.trials = get_as<int>(value, key);
    else if (key == "base_seed") cfg.base_seed = get_as<std::uint64_t>(value, key);
    else if (key == "delta") cfg.delta = get_as<double>(value, key);
    else if (key == "M") cfg.M = get_as<double>(value, key);
    else if (key == "dim") cfg.dim = get_as<int>(value, key);
    else if (key == "regenerate_instance") cfg.regenerate_instance = get_as<bool>(value, key);
    else if (key == "enumerate_classes") cfg.enumerate_classes = get_as<bool>(value, key);
    else if (key == "oracle") cfg.oracle = get_as<bool>(value, key);
    else if (key == "node_limit") cfg.node_limit = get_as<int>(value, key);
    else if (key == "timing") cfg.timing = get_as<bool>(value, key);
    else if (key == "output") cfg.output = get_as<std::string>(value, key);
    else throw UsageError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

json ExperimentConfig::to_json() const {
  json inst = {{"kind", instance.kind},
               {"n", instance.n},
               {"box_side", instance.box_side},
               {"min_radius", instance.min_radius},
               {"max_radius", instance.max_radius},
               {"p", instance.edge_probability},
               {"zeta", instance.zeta},
               {"seed", instance.seed}};
  if (!instance.file.empty()) inst["file"] = instance.file.string();
  if (instance.dim) inst["dim"] = *instance.dim;
  if (instance.max_side) inst["M"] = *instance.max_side;
  json doc = {{"algorithm", algorithm},
              {"instance", inst},
              {"trials", trials},
              {"base_seed", base_seed},
              {"delta", delta},
              {"M", M},
              {"dim", dim},
              {"regenerate_instance", regenerate_instance},
              {"enumerate_classes", enumerate_classes},
              {"oracle", oracle},
              {"node_limit", node_limit},
              {"timing", timing}};
  if (!output.empty()) doc["output"] = output;
  return doc;
}

void ExperimentConfig::validate() const {
  if (algorithm != "firstfit" && !needs_geometry(algorithm)) {
    throw UsageError("unknown algorithm '" + algorithm + "'");
  }
  if (trials < 1) throw UsageError("trials must be at least 1");
  if (!(delta > 0.0)) throw UsageError("delta must be positive");
  if (dim < 1) throw UsageError("dim must be positive");
  if ((algorithm == "classify" || algorithm == "hr_classify") && !(M > 2.0)) {
    throw UsageError(algorithm + " needs M > 2");
  }
  if (node_limit < 1 || node_limit > kMaxNodeLimit) throw UsageError("node_limit out of range");
  const auto& kind = instance.kind;
  if (kind == "star") {
    if (algorithm != "firstfit") throw UsageError("the star adversary only drives firstfit");
    if (instance.zeta < 1) throw UsageError("star needs zeta >= 1");
  } else if (kind == "levels" || kind == "random_graph") {
    if (needs_geometry(algorithm)) throw UsageError(algorithm + " needs a geometric instance");
  } else if (kind == "file") {
    if (instance.file.empty()) throw UsageError("instance kind 'file' needs 'file'");
  } else if (kind != "random_balls" && kind != "random_rects") {
    throw UsageError("unknown instance kind '" + kind + "'");
  }
  if (algorithm == "filter" && kind == "random_rects") throw UsageError("filter needs unit balls");
  if (algorithm == "hr_classify" && kind == "random_balls") {
    throw UsageError("hr_classify needs hyper-rectangles");
  }
  if (algorithm == "filter" && kind == "random_balls" &&
      (instance.min_radius != 1.0 || instance.max_radius != 1.0)) {
    throw UsageError("filter needs unit balls");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  if (threads <= 0) threads = thread_count_from_env();

  const bool star = config.instance.kind == "star";
  const bool shared_instance = !star && !config.regenerate_instance;
  ArrivalSequence fixed;
  OptValue fixed_opt;
  if (shared_instance) {
    fixed = build_instance(config, config.instance.seed);
    fixed_opt = compute_opt(config, fixed);
  }

  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  std::vector<char> refused(records.size(), 0);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (int t = next++; t < config.trials; t = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord rec;
        rec.trial = t;
        rec.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(t));
        rec.alg = config.algorithm;
        OptValue opt;
        if (star) {
          FirstFit alg;
          const auto outcome = star_adversary(config.instance.zeta, alg);
          rec.n = static_cast<int>(outcome.played.size());
          rec.alg_size = static_cast<double>(outcome.run.size());
          opt.size = outcome.opt_size;
        } else if (shared_instance) {
          rec.n = static_cast<int>(fixed.size());
          rec.alg_size = run_algorithm(config, fixed, rec.seed);
          opt = fixed_opt;
        } else {
          const auto seq = build_instance(config, derive_seed(config.instance.seed, static_cast<std::uint64_t>(t)));
          rec.n = static_cast<int>(seq.size());
          rec.alg_size = run_algorithm(config, seq, rec.seed);
          opt = compute_opt(config, seq);
        }
        rec.opt_size = opt.size;
        if (opt.size) rec.ratio = empirical_ratio(static_cast<double>(*opt.size), rec.alg_size);
        if (config.timing) {
          const auto elapsed = std::chrono::steady_clock::now() - start;
          rec.time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
        }
        records[static_cast<std::size_t>(t)] = std::move(rec);
        refused[static_cast<std::size_t>(t)] = opt.refused ? 1 : 0;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = config.trials;
      }
    }
  };

  const int workers = std::max(1, std::min(threads, config.trials));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result{std::move(records), {}};
  result.summary = summarize(result.records);
  for (char r : refused) result.summary.oracle_refused += r;
  return result;
}

ExperimentSummary summarize(std::span<const TrialRecord> records) {
  ExperimentSummary s;
  s.trials = static_cast<int>(records.size());
  if (records.empty()) return s;
  double sum = 0.0;
  for (const auto& r : records) sum += r.alg_size;
  s.mean_alg = sum / static_cast<double>(records.size());
  if (records.size() > 1) {
    double ss = 0.0;
    for (const auto& r : records) ss += (r.alg_size - s.mean_alg) * (r.alg_size - s.mean_alg);
    const double var = ss / static_cast<double>(records.size() - 1);
    s.stderr_alg = std::sqrt(var / static_cast<double>(records.size()));
  }
  s.ci_low = s.mean_alg - 3.0 * s.stderr_alg;
  s.ci_high = s.mean_alg + 3.0 * s.stderr_alg;
  double ratio_sum = 0.0;
  for (const auto& r : records) {
    if (!r.ratio) continue;
    if (std::isinf(*r.ratio)) {
      ++s.infinite_ratios;
    } else {
      ratio_sum += *r.ratio;
      ++s.ratio_count;
    }
  }
  if (s.ratio_count > 0) s.mean_ratio = ratio_sum / s.ratio_count;
  return s;
}

int thread_count_from_env() {
  if (const char* env = std::getenv("GEOMIS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.alg << ',' << r.n << ','
        << format_double(r.alg_size) << ','
        << (r.opt_size ? std::to_string(*r.opt_size) : std::string("-")) << ','
        << (r.ratio ? format_double(*r.ratio) : std::string("-")) << ','
        << (r.time_ms ? format_double(std::round(*r.time_ms * 1000.0) / 1000.0) : std::string("-"))
        << '\n';
  }
}

json summary_to_json(const ExperimentSummary& s) {
  return json{{"trials", s.trials},
              {"mean_alg", s.mean_alg},
              {"stderr_alg", s.stderr_alg},
              {"ci3_low", s.ci_low},
              {"ci3_high", s.ci_high},
              {"mean_ratio", s.mean_ratio},
              {"ratio_count", s.ratio_count},
              {"infinite_ratios", s.infinite_ratios},
              {"oracle_refused", s.oracle_refused}};
}

}  // namespace geomis
