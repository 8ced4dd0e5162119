#include "geomis/adversaries.hpp"

#include <cmath>
#include <string>

#include "geomis/errors.hpp"
#include "geomis/rng.hpp"

namespace geomis {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

}  // namespace

StarOutcome star_adversary(int zeta, OnlineAlgorithm& algorithm) {
  require(zeta >= 1, "star adversary needs zeta >= 1");
  StarOutcome out;
  OnlineRunner runner(algorithm);

  ArrivalEvent root;
  root.id = 0;
  out.played.events.push_back(root);
  if (runner.feed(root) == Decision::reject) {
    out.run = runner.result();
    out.opt_size = 1;
    return out;
  }
  for (int i = 1; i <= zeta; ++i) {
    ArrivalEvent leaf;
    leaf.id = i;
    leaf.neighbors = {0};
    out.played.events.push_back(leaf);
    runner.feed(leaf);
  }
  out.run = runner.result();
  out.opt_size = zeta;
  return out;
}

ArrivalSequence level_graph_gen(int zeta, std::uint64_t seed) {
  require(zeta >= 1, "level graph needs zeta >= 1");
  Rng rng(seed);
  ArrivalSequence seq;
  seq.events.push_back(ArrivalEvent{0, {}, std::nullopt});
  seq.events.push_back(ArrivalEvent{1, {}, std::nullopt});
  for (int level = 2; level <= zeta; ++level) {
    const int left_parent = 2 * (level - 2);
    const int parent = rng.coin() ? left_parent + 1 : left_parent;
    // The parent's edges all go to earlier levels, so they are already known.
    std::vector<int> nbrs = seq.events[static_cast<std::size_t>(parent)].neighbors;
    nbrs.push_back(parent);
    const int base = 2 * (level - 1);
    seq.events.push_back(ArrivalEvent{base, nbrs, std::nullopt});
    seq.events.push_back(ArrivalEvent{base + 1, nbrs, std::nullopt});
  }
  return seq;
}

ArrivalSequence random_balls_gen(int n, int dim, double box_side, std::uint64_t seed,
                                 double min_radius, double max_radius) {
  require(n >= 0, "n must be non-negative");
  require(dim >= 1, "dim must be positive");
  require(box_side > 0.0, "box side must be positive");
  require(min_radius > 0.0 && min_radius <= max_radius, "radius range must be positive");
  Rng rng(seed);
  std::vector<SizedObject> objects;
  objects.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (auto& x : c) x = rng.uniform(0.0, box_side);
    const double r = min_radius == max_radius ? min_radius : rng.uniform(min_radius, max_radius);
    objects.emplace_back(Ball(Point(std::move(c)), r));
  }
  auto seq = sequence_from_objects(objects);
  seq.dim = dim;
  return seq;
}

ArrivalSequence random_rects_gen(int n, int dim, double max_side, double box_side,
                                 std::uint64_t seed) {
  require(n >= 0, "n must be non-negative");
  require(dim >= 1, "dim must be positive");
  require(box_side > 0.0, "box side must be positive");
  require(max_side >= 1.0, "max side must be at least 1");
  Rng rng(seed);
  std::vector<SizedObject> objects;
  objects.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<double> lo(static_cast<std::size_t>(dim));
    std::vector<double> hi(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = rng.uniform(0.0, box_side);
      hi[i] = lo[i] + rng.uniform(1.0, max_side);
      // Keep the realised side inside [1, M] despite rounding of lo + side.
      while (hi[i] - lo[i] < 1.0) hi[i] = std::nextafter(hi[i], HUGE_VAL);
      while (hi[i] - lo[i] > max_side) hi[i] = std::nextafter(hi[i], -HUGE_VAL);
    }
    objects.emplace_back(HyperRectangle(Point(std::move(lo)), Point(std::move(hi))));
  }
  auto seq = sequence_from_objects(objects);
  seq.dim = dim;
  return seq;
}

ArrivalSequence random_graph_gen(int n, double edge_probability, std::uint64_t seed) {
  require(n >= 0, "n must be non-negative");
  require(edge_probability >= 0.0 && edge_probability <= 1.0, "edge probability must be in [0,1]");
  Rng rng(seed);
  ArrivalSequence seq;
  for (int v = 0; v < n; ++v) {
    ArrivalEvent e;
    e.id = v;
    for (int u = 0; u < v; ++u) {
      if (rng.uniform() < edge_probability) e.neighbors.push_back(u);
    }
    seq.events.push_back(std::move(e));
  }
  return seq;
}

}  // namespace geomis
