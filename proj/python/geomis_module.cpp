#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "geomis/adversaries.hpp"
#include "geomis/errors.hpp"
#include "geomis/experiment.hpp"
#include "geomis/instance_io.hpp"
#include "geomis/lattice.hpp"
#include "geomis/oracle.hpp"
#include "geomis/randomized.hpp"
#include "geomis/rng.hpp"

namespace py = pybind11;
using namespace geomis;

namespace {

py::dict hit_dict(const LatticeHit& h) {
  py::dict d;
  const auto c = h.point.coords();
  d["point"] = std::vector<double>(c.begin(), c.end());
  d["coeffs"] = h.coeffs;
  d["distance"] = h.distance;
  return d;
}

std::string to_text(const ArrivalSequence& seq) {
  std::ostringstream os;
  write_instance(os, seq);
  return os.str();
}

ArrivalSequence from_text(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

py::object parse_json(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

py::dict run_dict(const RunResult& r) {
  py::dict d;
  d["accepted"] = r.accepted;
  d["valid"] = r.valid();
  return d;
}

RunResult run_named(const ArrivalSequence& seq, const std::string& alg, std::uint64_t seed, double delta,
                    double M) {
  if (alg == "firstfit") return first_fit(seq);
  if (!seq.geometric()) throw UsageError(alg + " needs a geometric instance");
  if (alg == "filter") return filter_alg(seq, LatticeParams(*seq.dim, delta), seed);
  if (alg == "classify") return classify_alg(seq, ClassifyConfig(M), seed);
  if (alg == "hr_classify") return hr_classify_alg(seq, HRClassifyConfig(M, *seq.dim), seed);
  throw UsageError("unknown algorithm '" + alg + "'");
}

}  // namespace

PYBIND11_MODULE(geomis, m) {
  m.doc() = "Online maximum independent set on geometric intersection graphs";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<OracleRefusal>(m, "OracleRefusal", PyExc_RuntimeError);

  py::class_<ArrivalSequence>(m, "Instance")
      .def_static("from_text", &from_text)
      .def_static("load", [](const std::filesystem::path& p) { return load_instance(p); })
      .def("to_text", &to_text)
      .def("save", [](const ArrivalSequence& s, const std::filesystem::path& p) { save_instance(s, p); })
      .def("__len__", &ArrivalSequence::size)
      .def_property_readonly("dim", [](const ArrivalSequence& s) { return s.dim; })
      .def("edges", [](const ArrivalSequence& s) {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : s.events)
          for (int u : e.neighbors) out.emplace_back(u, e.id);
        return out;
      })
      .def_static("from_edges", [](int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return sequence_from_graph(g);
      }, py::arg("n"), py::arg("edges"));

  m.def("random_balls", &random_balls_gen, py::arg("n"), py::arg("dim"), py::arg("box_side"), py::arg("seed"),
        py::arg("min_radius") = 1.0, py::arg("max_radius") = 1.0);
  m.def("random_rects", &random_rects_gen, py::arg("n"), py::arg("dim"), py::arg("M"), py::arg("box_side"),
        py::arg("seed"));
  m.def("random_graph", &random_graph_gen, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("level_graph", &level_graph_gen, py::arg("zeta"), py::arg("seed"));

  m.def("run", [](const ArrivalSequence& seq, const std::string& alg, std::uint64_t seed, double delta, double M) {
    return run_dict(run_named(seq, alg, seed, delta, M));
  }, py::arg("instance"), py::arg("alg") = "firstfit", py::arg("seed") = 0, py::arg("delta") = 0.01,
        py::arg("M") = 8.0);

  m.def("star_adversary", [](int zeta, const std::string& against) {
    FirstFit ff;
    AlwaysReject rej;
    OnlineAlgorithm* alg = &ff;
    if (against == "reject") alg = &rej;
    else if (against != "firstfit") throw UsageError("unknown algorithm '" + against + "'");
    const auto out = star_adversary(zeta, *alg);
    py::dict d = run_dict(out.run);
    d["instance"] = out.played;
    d["opt"] = out.opt_size;
    return d;
  }, py::arg("zeta"), py::arg("against") = "firstfit");

  m.def("exact_mis", [](const ArrivalSequence& seq, int node_limit) {
    const auto r = exact_mis(seq.graph(), node_limit);
    return py::make_tuple(r.size, r.witness);
  }, py::arg("instance"), py::arg("node_limit") = kDefaultNodeLimit);
  m.def("independent_kissing_number", [](const ArrivalSequence& seq, int node_limit) {
    const auto r = independent_kissing_number(seq.graph(), node_limit);
    py::dict d;
    d["zeta"] = r.zeta;
    d["center"] = r.witness_center;
    d["witness"] = r.witness_set;
    return d;
  }, py::arg("instance"), py::arg("node_limit") = kDefaultNodeLimit);

  m.def("min_pairwise_distance", [](int dim, double delta, int window) {
    return min_pairwise_distance(LatticeParams(dim, delta), window);
  }, py::arg("dim") = 3, py::arg("delta") = 0.01, py::arg("window") = 3);
  m.def("closest_lattice_point", [](const std::vector<double>& c, double delta) {
    return hit_dict(closest_lattice_point(LatticeParams(static_cast<int>(c.size()), delta), Point(c)));
  }, py::arg("point"), py::arg("delta") = 0.01);
  m.def("parity_rounding", [](const std::vector<double>& c, double delta) {
    return hit_dict(parity_rounding(LatticeParams(static_cast<int>(c.size()), delta), Point(c)));
  }, py::arg("point"), py::arg("delta") = 0.01);
  m.def("is_covered", [](const std::vector<double>& c, double delta) {
    return is_covered(LatticeParams(static_cast<int>(c.size()), delta), Point(c));
  }, py::arg("point"), py::arg("delta") = 0.01);
  m.def("filter_acceptance_probability", [](int dim, double delta) {
    return filter_acceptance_probability(LatticeParams(dim, delta));
  }, py::arg("dim") = 3, py::arg("delta") = 0.01);
  m.def("mc_volume", [](const std::vector<double>& origin, std::uint64_t samples, std::uint64_t seed, double delta) {
    const LatticeParams p(static_cast<int>(origin.size()), delta);
    const auto e = mc_volume_fraction(p, SampleBox(p, Point(origin)), samples, seed);
    py::dict d;
    d["fraction"] = e.fraction;
    d["fraction_stderr"] = e.fraction_stderr;
    d["volume"] = e.volume;
    d["volume_stderr"] = e.volume_stderr;
    return d;
  }, py::arg("origin"), py::arg("samples"), py::arg("seed") = 0, py::arg("delta") = 0.01);

  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("index"));

  m.def("run_experiment", [](const std::string& config_json, int threads) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("bad config JSON: ") + e.what());
    }
    const auto cfg = ExperimentConfig::from_json(doc);
    ExperimentResult r;
    {
      py::gil_scoped_release release;
      r = run_experiment(cfg, threads);
    }
    std::ostringstream csv;
    write_csv(csv, r.records);
    return py::make_tuple(csv.str(), parse_json(summary_to_json(r.summary)));
  }, py::arg("config_json"), py::arg("threads") = 1);
}
