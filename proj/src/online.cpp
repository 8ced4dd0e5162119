#include "geomis/online.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "geomis/errors.hpp"

namespace geomis {

Graph ArrivalSequence::graph() const {
  Graph g(static_cast<int>(events.size()));
  for (const auto& e : events) {
    for (int u : e.neighbors) g.add_edge(u, e.id);
  }
  return g;
}

std::vector<SizedObject> ArrivalSequence::objects() const {
  std::vector<SizedObject> out;
  out.reserve(events.size());
  for (const auto& e : events) {
    if (!e.payload) throw UsageError("sequence has no geometric payloads");
    out.push_back(*e.payload);
  }
  return out;
}

void validate(const ArrivalSequence& seq) {
  auto fail = [](int id, const std::string& msg) {
    throw ValidationError("event " + std::to_string(id) + ": " + msg);
  };
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    const auto& e = seq.events[i];
    if (e.id != static_cast<int>(i)) fail(e.id, "ids must be 0..n-1 in arrival order");
    for (std::size_t k = 0; k < e.neighbors.size(); ++k) {
      const int u = e.neighbors[k];
      if (u < 0 || u >= e.id) fail(e.id, "neighbor " + std::to_string(u) + " not yet revealed");
      if (k > 0 && e.neighbors[k - 1] >= u) fail(e.id, "neighbors must be sorted and distinct");
    }
    if (e.payload.has_value() != seq.geometric()) {
      fail(e.id, "payloads must be present on every event or on none");
    }
    if (e.payload && e.payload->dim() != *seq.dim) fail(e.id, "payload dimension mismatch");
  }
  if (!seq.geometric() || seq.events.empty()) return;

  const bool balls = seq.events.front().payload->is_ball();
  for (const auto& e : seq.events) {
    if (e.payload->is_ball() != balls) fail(e.id, "mixed balls and rectangles are not supported");
  }
  const auto objects = seq.objects();
  if (intersection_graph(objects) != seq.graph()) {
    throw ValidationError("adjacency does not match the geometric intersection graph");
  }
}

ArrivalSequence sequence_from_objects(std::span<const SizedObject> objects) {
  ArrivalSequence seq;
  if (objects.empty()) return seq;
  seq.dim = objects.front().dim();
  const Graph g = intersection_graph(objects);
  for (int i = 0; i < g.size(); ++i) {
    ArrivalEvent e;
    e.id = i;
    for (int u : g.neighbors(i)) {
      if (u < i) e.neighbors.push_back(u);
    }
    e.payload = objects[static_cast<std::size_t>(i)];
    seq.events.push_back(std::move(e));
  }
  return seq;
}

ArrivalSequence sequence_from_graph(const Graph& graph) {
  ArrivalSequence seq;
  for (int i = 0; i < graph.size(); ++i) {
    ArrivalEvent e;
    e.id = i;
    for (int u : graph.neighbors(i)) {
      if (u < i) e.neighbors.push_back(u);
    }
    seq.events.push_back(std::move(e));
  }
  return seq;
}

ArrivalSequence prefix(const ArrivalSequence& seq, std::size_t k) {
  ArrivalSequence out;
  out.dim = seq.dim;
  const std::size_t n = std::min(k, seq.events.size());
  out.events.assign(seq.events.begin(), seq.events.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Decision OnlineRunner::feed(const ArrivalEvent& event) {
  const int expected = static_cast<int>(result_.decisions.size());
  if (event.id != expected) {
    throw UsageError("arrival " + std::to_string(event.id) + " out of order, expected " +
                     std::to_string(expected));
  }
  for (int u : event.neighbors) {
    if (u < 0 || u >= event.id) {
      throw UsageError("arrival " + std::to_string(event.id) + " references unrevealed vertex " +
                       std::to_string(u));
    }
  }

  const Decision d = algorithm_.decide(event);
  result_.decisions.push_back(d);
  is_accepted_.push_back(d == Decision::accept ? 1 : 0);
  if (d == Decision::accept) {
    for (int u : event.neighbors) {
      if (is_accepted_[static_cast<std::size_t>(u)] != 0) result_.valid_independent = false;
    }
    result_.accepted.push_back(event.id);
  }

  // The algorithm's own set may only grow by this arrival.
  const auto reported = algorithm_.accepted();
  if (reported.size() != result_.accepted.size() ||
      (!reported.empty() && reported.back() != result_.accepted.back())) {
    result_.valid_irrevocable = false;
  }
  return d;
}

RunResult OnlineRunner::result() const {
  RunResult out = result_;
  const auto reported = algorithm_.accepted();
  if (!std::equal(reported.begin(), reported.end(), out.accepted.begin(), out.accepted.end())) {
    out.valid_irrevocable = false;
  }
  return out;
}

RunResult run_online(OnlineAlgorithm& algorithm, const ArrivalSequence& seq) {
  OnlineRunner runner(algorithm);
  for (const auto& e : seq.events) runner.feed(e);
  return runner.result();
}

Decision FirstFit::decide(const ArrivalEvent& event) {
  const auto id = static_cast<std::size_t>(event.id);
  if (taken_.size() <= id) taken_.resize(id + 1, 0);
  for (int u : event.neighbors) {
    if (static_cast<std::size_t>(u) < taken_.size() && taken_[static_cast<std::size_t>(u)] != 0) {
      return Decision::reject;
    }
  }
  taken_[id] = 1;
  accepted_.push_back(event.id);
  return Decision::accept;
}

RunResult first_fit(const ArrivalSequence& seq) {
  FirstFit alg;
  return run_online(alg, seq);
}

double empirical_ratio(double opt_size, double alg_size) {
  if (alg_size == 0.0) {
    return opt_size == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return opt_size / alg_size;
}

double empirical_ratio(int opt_size, const RunResult& result) {
  return empirical_ratio(static_cast<double>(opt_size), static_cast<double>(result.size()));
}

}  // namespace geomis
