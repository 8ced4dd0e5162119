#include "geomis/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geomis/adversaries.hpp"
#include "geomis/errors.hpp"
#include "geomis/experiment.hpp"
#include "geomis/instance_io.hpp"
#include "geomis/lattice.hpp"
#include "geomis/oracle.hpp"
#include "geomis/randomized.hpp"

namespace geomis {

using nlohmann::json;

namespace {

// Raised by a subcommand whose check did not hold (exit code 2).
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharedFlags {
  std::uint64_t seed = 0;
  double delta = LatticeParams::kDefaultDelta;
  std::optional<double> M;
  std::optional<int> dim;
  std::optional<int> trials;
  std::string out;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--delta", f.delta, "Lattice delta")->capture_default_str();
  cmd->add_option("--M", f.M, "Upper bound on widths / side lengths");
  cmd->add_option("--dim", f.dim, "Dimension");
  cmd->add_option("--trials", f.trials, "Number of trials");
  cmd->add_option("--out", f.out, "Output path (default: stdout)");
}

// Writes to --out when given, otherwise to `fallback`.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  write(file);
}

Point parse_point_arg(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad coordinate list '" + text + "'");
    }
  }
  return Point(std::move(coords));
}

std::string join(std::span<const int> ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + std::to_string(ids[i]);
  return s;
}

std::string join(const Point& p) {
  std::string s;
  for (int i = 0; i < p.dim(); ++i) s += (i ? "," : "") + format_double(p[i]);
  return s;
}

}  // namespace

int cli_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online maximum independent set on geometric intersection graphs", "geomis"};
  app.require_subcommand(1);

  // gen
  SharedFlags gen_flags;
  std::string gen_kind;
  int gen_n = 20;
  int gen_zeta = 5;
  double gen_box = 10.0;
  double gen_p = 0.3;
  double gen_rmin = 1.0;
  double gen_rmax = 1.0;
  std::string gen_against = "firstfit";
  auto* gen = app.add_subcommand("gen", "Generate an instance (or a star-adversary transcript)");
  add_shared(gen, gen_flags);
  gen->add_option("--kind", gen_kind, "Instance kind")
      ->required()
      ->check(CLI::IsMember({"star", "levels", "random_balls", "random_rects", "random_graph"}));
  gen->add_option("--n", gen_n, "Number of arrivals");
  gen->add_option("--zeta", gen_zeta, "Independent kissing number parameter (star, levels)");
  gen->add_option("--box-side", gen_box, "Side of the placement box");
  gen->add_option("--p", gen_p, "Edge probability (random_graph)");
  gen->add_option("--min-radius", gen_rmin, "Smallest ball radius (random_balls)");
  gen->add_option("--max-radius", gen_rmax, "Largest ball radius (random_balls)");
  gen->add_option("--against", gen_against, "Algorithm the star adversary plays against")
      ->check(CLI::IsMember({"firstfit", "reject"}));

  // run
  SharedFlags run_flags;
  std::string run_alg = "firstfit";
  std::string run_in;
  bool run_verify = false;
  int run_node_limit = kDefaultNodeLimit;
  std::string run_shift;
  auto* run = app.add_subcommand("run", "Run an online algorithm on an instance file");
  add_shared(run, run_flags);
  run->add_option("--alg", run_alg, "Algorithm")
      ->check(CLI::IsMember({"firstfit", "filter", "classify", "hr_classify"}));
  run->add_option("--in", run_in, "Instance file")->required();
  run->add_flag("--verify", run_verify, "Compute OPT and the kissing number with the exact oracle");
  run->add_option("--node-limit", run_node_limit, "Oracle node limit");
  run->add_option("--shift", run_shift, "Force the filter shift, comma-separated");

  // oracle
  std::string oracle_what = "mis";
  std::string oracle_in;
  int oracle_node_limit = kDefaultNodeLimit;
  bool oracle_witness = false;
  auto* oracle = app.add_subcommand("oracle", "Exact offline computations on small instances");
  oracle->add_option("--what", oracle_what, "Quantity")
      ->check(CLI::IsMember({"mis", "ikn", "ratio"}));
  oracle->add_option("--in", oracle_in, "Instance file")->required();
  oracle->add_option("--node-limit", oracle_node_limit, "Refuse graphs larger than this");
  oracle->add_flag("--witness", oracle_witness, "Also print the witness set");

  // lattice
  SharedFlags lat_flags;
  std::string lat_check = "mindist";
  int lat_window = 3;
  std::uint64_t lat_samples = 1000000;
  std::string lat_point;
  std::string lat_origin;
  auto* lattice = app.add_subcommand("lattice", "Lattice checks");
  add_shared(lattice, lat_flags);
  lattice->add_option("--check", lat_check, "Check to run")
      ->check(CLI::IsMember({"mindist", "closest", "covered", "volume", "probability"}));
  lattice->add_option("--window", lat_window, "Coefficient window for mindist");
  lattice->add_option("--samples", lat_samples, "Monte Carlo samples for volume");
  lattice->add_option("--point", lat_point, "Query point, comma-separated");
  lattice->add_option("--origin", lat_origin, "Sample box origin, comma-separated");

  // experiment
  SharedFlags exp_flags;
  std::string exp_config;
  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment from a JSON config");
  add_shared(experiment, exp_flags);
  experiment->add_option("--config", exp_config, "Experiment config (JSON)")->required();

  std::vector<const char*> argv{"geomis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      const int dim = gen_flags.dim.value_or(3);
      ArrivalSequence seq;
      std::vector<Decision> decisions;
      if (gen_kind == "star") {
        FirstFit ff;
        AlwaysReject rej;
        OnlineAlgorithm& alg = gen_against == "reject" ? static_cast<OnlineAlgorithm&>(rej)
                                                       : static_cast<OnlineAlgorithm&>(ff);
        auto outcome = star_adversary(gen_zeta, alg);
        seq = std::move(outcome.played);
        decisions = outcome.run.decisions;
      } else if (gen_kind == "levels") {
        seq = level_graph_gen(gen_zeta, gen_flags.seed);
      } else if (gen_kind == "random_balls") {
        seq = random_balls_gen(gen_n, dim, gen_box, gen_flags.seed, gen_rmin, gen_rmax);
      } else if (gen_kind == "random_rects") {
        seq = random_rects_gen(gen_n, dim, gen_flags.M.value_or(8.0), gen_box, gen_flags.seed);
      } else {
        seq = random_graph_gen(gen_n, gen_p, gen_flags.seed);
      }
      emit(gen_flags.out, out, [&](std::ostream& os) { write_instance(os, seq, decisions); });
      return kExitOk;
    }

    if (*run) {
      const auto seq = load_instance(run_in);
      const int dim = seq.dim.value_or(run_flags.dim.value_or(3));
      RunResult result;
      json doc{{"algorithm", run_alg}, {"n", seq.size()}};
      if (run_alg == "firstfit") {
        result = first_fit(seq);
      } else if (run_alg == "filter") {
        std::optional<Point> shift;
        if (!run_shift.empty()) shift = parse_point_arg(run_shift);
        Filter alg(LatticeParams(dim, run_flags.delta), run_flags.seed);
        if (shift) alg.force_shift(*shift);
        result = run_online(alg, seq);
        if (alg.shift()) doc["shift"] = alg.shift()->coords();
      } else if (run_alg == "classify") {
        Classify alg(ClassifyConfig(run_flags.M.value_or(8.0)), run_flags.seed);
        result = run_online(alg, seq);
        if (alg.chosen_class()) doc["class"] = *alg.chosen_class();
      } else {
        HRClassify alg(HRClassifyConfig(run_flags.M.value_or(8.0), dim), run_flags.seed);
        result = run_online(alg, seq);
        if (alg.chosen_class()) doc["class"] = *alg.chosen_class();
      }
      doc["accepted"] = result.accepted;
      doc["size"] = result.size();
      doc["valid_independent"] = result.valid_independent;
      doc["valid_irrevocable"] = result.valid_irrevocable;
      bool ok = result.valid();
      if (run_verify) {
        const auto check = verify_ratio(seq, result, run_node_limit);
        doc["opt"] = check.opt;
        doc["zeta"] = check.zeta;
        doc["ratio"] = check.ratio;
        // opt <= zeta * alg only holds for the deterministic greedy.
        if (run_alg == "firstfit") {
          doc["bound_satisfied"] = check.bound_satisfied;
          ok = ok && check.bound_satisfied;
        }
      }
      emit(run_flags.out, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*oracle) {
      const auto seq = load_instance(oracle_in);
      const Graph g = seq.graph();
      if (oracle_what == "mis") {
        const auto mis = exact_mis(g, oracle_node_limit);
        out << mis.size << '\n';
        if (oracle_witness) out << "witness: " << join(mis.witness) << '\n';
      } else if (oracle_what == "ikn") {
        const auto ikn = independent_kissing_number(g, oracle_node_limit);
        out << ikn.zeta << '\n';
        if (oracle_witness) {
          out << "center: " << ikn.witness_center << '\n'
              << "witness: " << join(ikn.witness_set) << '\n';
        }
      } else {
        const auto check = verify_ratio(seq, first_fit(seq), oracle_node_limit);
        out << json{{"opt", check.opt},
                    {"alg", check.alg},
                    {"ratio", check.ratio},
                    {"zeta", check.zeta},
                    {"bound_satisfied", check.bound_satisfied}}
                   .dump()
            << '\n';
        if (!check.bound_satisfied) return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (*lattice) {
      const LatticeParams params(lat_flags.dim.value_or(3), lat_flags.delta);
      if (lat_check == "mindist") {
        const double d = min_pairwise_distance(params, lat_window);
        out << format_double(d) << '\n';
        if (!(d > 4.0)) throw CheckFailed("minimum lattice distance is not greater than 4");
      } else if (lat_check == "closest" || lat_check == "covered") {
        if (lat_point.empty()) throw UsageError("--point is required");
        const Point c = parse_point_arg(lat_point);
        const auto hit = closest_lattice_point(params, c);
        const bool covered = is_covered(params, c);
        out << json{{"point", hit.point.coords()},
                    {"coeffs", hit.coeffs},
                    {"distance", hit.distance},
                    {"covered", covered}}
                   .dump()
            << '\n';
      } else if (lat_check == "probability") {
        const double p = filter_acceptance_probability(params);
        out << json{{"dim", params.dim()}, {"delta", params.delta()}, {"probability", p},
                    {"ratio", 1.0 / p}}
                   .dump()
            << '\n';
      } else {
        const Point origin =
            lat_origin.empty() ? Point::zero(params.dim()) : parse_point_arg(lat_origin);
        const auto est =
            mc_volume_fraction(params, SampleBox(params, origin), lat_samples, lat_flags.seed);
        const double target = unit_ball_volume(params.dim());
        const double z = est.volume_stderr > 0 ? std::abs(est.volume - target) / est.volume_stderr
                                               : std::abs(est.volume - target);
        out << json{{"origin", join(origin)},
                    {"fraction", est.fraction},
                    {"fraction_stderr", est.fraction_stderr},
                    {"volume", est.volume},
                    {"volume_stderr", est.volume_stderr},
                    {"unit_ball_volume", target},
                    {"z", z}}
                   .dump()
            << '\n';
        if (!(z <= 3.0)) throw CheckFailed("volume estimate deviates by more than 3 sigma");
      }
      return kExitOk;
    }

    // experiment
    std::ifstream cfg_file(exp_config);
    if (!cfg_file) throw UsageError("cannot open config " + exp_config);
    json doc;
    try {
      doc = json::parse(cfg_file);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    auto cfg = ExperimentConfig::from_json(doc);
    if (exp_flags.trials) cfg.trials = *exp_flags.trials;
    if (experiment->count("--seed") > 0) cfg.base_seed = exp_flags.seed;
    if (experiment->count("--delta") > 0) cfg.delta = exp_flags.delta;
    if (exp_flags.M) cfg.M = *exp_flags.M;
    if (exp_flags.dim) cfg.dim = *exp_flags.dim;
    if (!exp_flags.out.empty()) cfg.output = exp_flags.out;
    cfg.validate();

    const auto result = run_experiment(cfg);
    const std::string summary = summary_to_json(result.summary).dump(2);
    if (cfg.output.empty()) {
      write_csv(out, result.records);
      err << summary << '\n';
    } else {
      emit(cfg.output, out, [&](std::ostream& os) { write_csv(os, result.records); });
      out << summary << '\n';
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const OracleRefusal& e) {
    err << "oracle refused: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace geomis
