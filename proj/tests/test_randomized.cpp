#include <doctest.h>

#include <cmath>
#include <map>

#include "geomis/adversaries.hpp"
#include "geomis/errors.hpp"
#include "geomis/oracle.hpp"
#include "geomis/randomized.hpp"
#include "geomis/rng.hpp"
#include "oracles.hpp"

using namespace geomis;

namespace {

ArrivalSequence unit_balls(std::vector<Point> centres) {
  std::vector<SizedObject> objs;
  for (auto& c : centres) objs.emplace_back(Ball(std::move(c), 1.0));
  return sequence_from_objects(objs);
}

// Literal Filter: FirstFit over the balls whose shifted centre is within 1
// of some lattice point (brute-force coverage).
std::vector<int> literal_filter(const ArrivalSequence& seq, double delta, const Point& shift) {
  std::vector<int> covered;
  for (const auto& e : seq.events) {
    const Point c = e.payload->ball().center() + shift;
    if (ref::brute_covered(delta, c.coords())) covered.push_back(e.id);
  }
  const Graph g = seq.graph();
  std::vector<int> accepted;
  for (int v : covered) {
    bool free = true;
    for (int a : accepted) free = free && !g.adjacent(a, v);
    if (free) accepted.push_back(v);
  }
  return accepted;
}

double chi_square(const std::vector<int>& counts) {
  double total = 0;
  for (int c : counts) total += c;
  const double expect = total / static_cast<double>(counts.size());
  double chi = 0;
  for (int c : counts) chi += (c - expect) * (c - expect) / expect;
  return chi;
}

}  // namespace

TEST_SUITE("filter") {
  TEST_CASE("fixed shift examples") {
    const LatticeParams p(3, 0.01);
    const Point zero = Point::zero(3);
    CHECK(filter_alg(unit_balls({Point{0.2, 0, 0}}), p, 0, zero).accepted == std::vector<int>{0});
    CHECK(filter_alg(unit_balls({Point{2.0, 0, 0}}), p, 0, zero).accepted.empty());
    CHECK_FALSE(ref::brute_covered(0.01, Point{2.0, 0, 0}.coords()));
    const auto two = filter_alg(unit_balls({Point{0.2, 0, 0}, Point{0.5, 0.5, 0}}), p, 0, zero);
    CHECK(two.accepted == std::vector<int>{0});
    CHECK(two.decisions == std::vector<Decision>{Decision::accept, Decision::reject});
  }

  TEST_CASE("rejects non-unit balls and non-ball payloads") {
    const LatticeParams p(3, 0.01);
    std::vector<SizedObject> big{Ball(Point{0, 0, 0}, 2.0)};
    CHECK_THROWS_AS(filter_alg(sequence_from_objects(big), p, 1), UsageError);
    std::vector<SizedObject> rect{HyperRectangle(Point{0, 0, 0}, Point{1, 1, 1})};
    CHECK_THROWS_AS(filter_alg(sequence_from_objects(rect), p, 1), UsageError);
    CHECK_THROWS_AS(filter_alg(random_graph_gen(3, 0.5, 1), p, 1), UsageError);
  }

  TEST_CASE("shift is drawn lazily inside its box and is seed-deterministic") {
    const LatticeParams p(3, 0.01);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Filter alg(p, seed);
      CHECK_FALSE(alg.shift().has_value());
      const auto seq = random_balls_gen(3, 3, 10.0, seed);
      const auto res = run_online(alg, seq);
      REQUIRE(alg.shift().has_value());
      const Point& b = *alg.shift();
      CHECK(b[0] >= 0.0);
      CHECK(b[0] < 4.01);
      CHECK(b[1] >= 0.0);
      CHECK(b[1] < 2.0 * std::sqrt(3.0));
      CHECK(b[2] < 2.0 * std::sqrt(3.0));
      CHECK(filter_alg(seq, p, seed).accepted == res.accepted);
    }
  }

  TEST_CASE("cluster law and equivalence with literal FirstFit") {
    const LatticeParams p(3, 0.01);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto seq = random_balls_gen(200, 3, 20.0, seed);
      Filter alg(p, derive_seed(99, seed));
      const auto res = run_online(alg, seq);
      REQUIRE(res.valid());
      CHECK(res.accepted == literal_filter(seq, 0.01, *alg.shift()));

      const auto& cells = alg.cells();
      const Graph g = seq.graph();
      std::map<CoeffVector, int> cluster_sizes;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i]) continue;
        ++cluster_sizes[*cells[i]];
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          if (!cells[j]) continue;
          CHECK(g.adjacent(static_cast<int>(i), static_cast<int>(j)) == (*cells[i] == *cells[j]));
        }
      }
      CHECK(res.size() == cluster_sizes.size());
    }
  }

  TEST_CASE("empirical acceptance rate matches the volume ratio") {
    const LatticeParams p(3, 0.01);
    const double prob = filter_acceptance_probability(p);
    Rng rng(4242);
    const int n = 20000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      const Point c{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
      Filter alg(p, rng.next());
      hits += alg.decide(ArrivalEvent{0, {}, SizedObject(Ball(c, 1.0))}) == Decision::accept ? 1 : 0;
    }
    const double rate = static_cast<double>(hits) / n;
    CHECK(std::abs(rate - prob) <= 3.0 * std::sqrt(prob * (1 - prob) / n));
  }

  TEST_CASE("expected size is at least the acceptance probability times OPT") {
    const LatticeParams p(3, 0.01);
    const double prob = filter_acceptance_probability(p);
    for (std::uint64_t inst = 0; inst < 4; ++inst) {
      const auto seq = random_balls_gen(20, 3, 7.0, 500 + inst);
      const int opt = exact_mis(seq.graph()).size;
      const int shifts = 300;
      double sum = 0, sq = 0;
      for (int s = 0; s < shifts; ++s) {
        const double k = static_cast<double>(filter_alg(seq, p, derive_seed(inst, static_cast<std::uint64_t>(s))).size());
        sum += k;
        sq += k * k;
      }
      const double m = sum / shifts;
      const double se = std::sqrt((sq / shifts - m * m) / (shifts - 1));
      CHECK(m >= prob * opt - 3 * se);
    }
  }
}

TEST_SUITE("classify") {
  TEST_CASE("class structure") {
    const ClassifyConfig cfg(8.0);
    CHECK(cfg.class_count() == 4);
    CHECK(cfg.class_of(3.5) == 1);
    CHECK(cfg.class_of(1.0) == 0);
    CHECK(cfg.class_of(8.0) == 3);
    CHECK(ClassifyConfig(5.0).class_count() == 3);
    CHECK_THROWS_AS(cfg.class_of(0.99), UsageError);
    CHECK_THROWS_AS(cfg.class_of(8.01), UsageError);
    CHECK_THROWS_AS(ClassifyConfig(2.0), UsageError);
  }

  TEST_CASE("every admissible width has exactly one class") {
    const ClassifyConfig cfg(37.5);
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
      const double w = rng.uniform(1.0, 37.5);
      const int j = cfg.class_of(w);
      CHECK(j >= 0);
      CHECK(j < cfg.class_count());
      CHECK(std::ldexp(1.0, j) <= w);
      CHECK(w < std::ldexp(1.0, j + 1));
    }
  }

  TEST_CASE("forced class run") {
    std::vector<SizedObject> objs{Ball(Point{0, 0}, 1.5), Ball(Point{100, 0}, 3.0),
                                  Ball(Point{200, 0}, 2.5)};
    const auto res = classify_alg(sequence_from_objects(objs), ClassifyConfig(8.0), 0, 1);
    CHECK(res.accepted == std::vector<int>{1, 2});
    std::vector<SizedObject> wide{Ball(Point{0, 0}, 9.0)};
    CHECK_THROWS_AS(classify_alg(sequence_from_objects(wide), ClassifyConfig(8.0), 0), UsageError);
  }

  TEST_CASE("class choice is uniform") {
    const ClassifyConfig cfg(8.0);
    std::vector<SizedObject> one{Ball(Point{0, 0}, 1.0)};
    const auto seq = sequence_from_objects(one);
    std::vector<int> counts(4, 0);
    for (std::uint64_t s = 0; s < 4000; ++s) {
      Classify alg(cfg, derive_seed(7, s));
      run_online(alg, seq);
      ++counts[static_cast<std::size_t>(*alg.chosen_class())];
    }
    CHECK(chi_square(counts) < 16.27);  // chi^2_3, p = 0.001
  }

  TEST_CASE("class enumeration bound") {
    const ClassifyConfig cfg(8.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto seq = random_balls_gen(18, 2, 25.0, seed, 1.0, 8.0);
      const int opt = exact_mis(seq.graph()).size;
      const auto sizes = classify_sizes_by_class(seq, cfg);
      int zmax = 1;
      for (int j = 0; j < cfg.class_count(); ++j) {
        std::vector<int> members;
        for (const auto& e : seq.events) {
          if (cfg.class_of(e.payload->width()) == j) members.push_back(e.id);
        }
        zmax = std::max(zmax, independent_kissing_number(seq.graph().induced(members)).zeta);
      }
      CHECK(mean(sizes) * zmax * cfg.class_count() >= opt);
    }
  }
}

TEST_SUITE("hr_classify") {
  TEST_CASE("class structure") {
    const HRClassifyConfig cfg(5.0, 2);
    CHECK(cfg.class_count() == 9);
    CHECK(cfg.all_classes().size() == 9);
    CHECK(cfg.class_of(HyperRectangle(Point{0, 0}, Point{1.5, 3.2})) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(cfg.class_of(HyperRectangle(Point{0, 0}, Point{0.5, 3.2})), UsageError);
    CHECK_THROWS_AS(cfg.class_of(HyperRectangle(Point{0, 0}, Point{1.5, 5.5})), UsageError);
    CHECK_THROWS_AS(HRClassifyConfig(1.5, 2), UsageError);
  }

  TEST_CASE("forced class keeps only matching rectangles") {
    std::vector<SizedObject> objs{HyperRectangle(Point{0, 0}, Point{1.5, 3.2}),
                                  HyperRectangle(Point{50, 0}, Point{53, 3}),
                                  HyperRectangle(Point{100, 0}, Point{101.2, 2.5})};
    const auto res = hr_classify_alg(sequence_from_objects(objs), HRClassifyConfig(5.0, 2), 0,
                                     std::vector<int>{0, 1});
    CHECK(res.accepted == std::vector<int>{0, 2});
  }

  TEST_CASE("class choice is uniform") {
    const HRClassifyConfig cfg(5.0, 2);
    std::vector<SizedObject> one{HyperRectangle(Point{0, 0}, Point{1, 1})};
    const auto seq = sequence_from_objects(one);
    std::map<std::vector<int>, int> counts;
    for (std::uint64_t s = 0; s < 9000; ++s) {
      HRClassify alg(cfg, derive_seed(8, s));
      run_online(alg, seq);
      ++counts[*alg.chosen_class()];
    }
    REQUIRE(counts.size() == 9);
    std::vector<int> flat;
    for (const auto& [k, v] : counts) flat.push_back(v);
    CHECK(chi_square(flat) < 26.12);  // chi^2_8, p = 0.001
  }

  TEST_CASE("class enumeration bound") {
    const HRClassifyConfig cfg(5.0, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto seq = random_rects_gen(20, 2, 5.0, 15.0, seed);
      const int opt = exact_mis(seq.graph()).size;
      const double m = mean(hr_classify_sizes_by_class(seq, cfg));
      CHECK(m * 144.0 >= opt);
    }
  }
}
