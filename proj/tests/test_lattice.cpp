#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geomis/errors.hpp"
#include "geomis/lattice.hpp"
#include "geomis/rng.hpp"
#include "oracles.hpp"

using namespace geomis;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Point random_point(Rng& rng, int dim, double lo, double hi) {
  std::vector<double> c(static_cast<std::size_t>(dim));
  for (auto& x : c) x = rng.uniform(lo, hi);
  return Point(std::move(c));
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("basis and lattice points") {
    const LatticeParams p(3, 0.01);
    const Point x = lattice_point(p, {1, 0, 0});
    CHECK(x[0] == doctest::Approx(4.01));
    CHECK(x[1] == 0.0);
    CHECK(lattice_point(p, {0, 0, 0}) == Point::zero(3));
    const Point y = lattice_point(p, {0, 1, 0});
    CHECK(y[0] == doctest::Approx(-2.005));
    CHECK(y[1] == doctest::Approx(3.4641016).epsilon(1e-8));
    CHECK(y[2] == 0.0);
    CHECK_THROWS_AS(lattice_point(p, {1, 0}), UsageError);
    CHECK_THROWS_AS(LatticeParams(1, 0.01), UsageError);
    CHECK_THROWS_AS(LatticeParams(3, 0.0), UsageError);
    CHECK(p.cell_volume() == doctest::Approx(4.01 * 12.0));
  }

  TEST_CASE("closest lattice point examples") {
    const LatticeParams p(3, 0.01);
    const auto origin = closest_lattice_point(p, Point{0.3, 0.2, -0.1});
    CHECK(origin.coeffs == CoeffVector{0, 0, 0});
    CHECK(origin.distance == doctest::Approx(std::sqrt(0.14)));

    // Frozen from tests/oracles/compute_expected.py (brute force, window 4).
    const auto hit = closest_lattice_point(p, Point{-2.0, 3.4, 0.1});
    CHECK(hit.coeffs == CoeffVector{0, 1, 0});
    CHECK(hit.point[0] == doctest::Approx(-2.005));
    CHECK(hit.point[1] == doctest::Approx(3.4641016151377544));
    CHECK(hit.distance == doctest::Approx(0.11888657225805106));

    const auto same = parity_rounding(p, Point{-2.0, 3.4, 0.1});
    CHECK(same.coeffs == CoeffVector{0, 1, 0});
  }

  TEST_CASE("parity rounding: exact odd multiple of sqrt 3 rounds up") {
    const LatticeParams p(3, 0.01);
    // x2 = 1 * sqrt(3): z = 1 (odd), y = 0 -> coordinate 2 sqrt 3, a2 = 1.
    const auto up = parity_rounding(p, Point{0.0, kSqrt3, 0.0});
    CHECK(up.coeffs[1] == 1);
    CHECK(up.point[1] == doctest::Approx(2.0 * kSqrt3));
    // x2 = -sqrt(3): z = -1 (odd) -> 0.
    const auto down = parity_rounding(p, Point{0.0, -kSqrt3, 0.0});
    CHECK(down.coeffs[1] == 0);
    // x1 multiplier parity follows a2 + a3: a2 = 1 forces an odd multiple of 2.005.
    CHECK(up.point[0] == doctest::Approx(2.005));
  }

  TEST_CASE("parity rounding is not always the closest point") {
    // c' = (2.0, sqrt3 - 0.001, 0): the rule keeps x2 at 0 and x1 at 0, while
    // (2.005, 2 sqrt 3, 0) is nearer. Values from the brute-force oracle.
    const LatticeParams p(3, 0.01);
    const Point c{2.0, kSqrt3 - 1e-3, 0.0};
    const auto rule = parity_rounding(p, c);
    CHECK(rule.coeffs == CoeffVector{0, 0, 0});
    CHECK(rule.distance == doctest::Approx(std::sqrt(4.0 + (kSqrt3 - 1e-3) * (kSqrt3 - 1e-3))));
    const auto best = closest_lattice_point(p, c);
    CHECK(best.coeffs == CoeffVector{1, 1, 0});
    CHECK(best.distance == doctest::Approx(1.7330580202679704));
    // Neither is within distance 1, so coverage is unaffected.
    CHECK_FALSE(is_covered(p, c));
  }

  TEST_CASE("is_covered examples") {
    const LatticeParams p(3, 0.01);
    CHECK(is_covered(p, Point{0.5, 0.5, 0.5}));
    CHECK_FALSE(is_covered(p, Point{0.0, 1.5, 0.0}));
    CHECK_FALSE(ref::brute_covered(0.01, Point{0.0, 1.5, 0.0}.coords()));
    for (const CoeffVector& a : {CoeffVector{0, 0, 0}, CoeffVector{3, -2, 5}, CoeffVector{-7, 1, 1}}) {
      CHECK(is_covered(p, lattice_point(p, a)));
    }
    // Boundary counts as covered.
    CHECK(is_covered(p, Point{1.0, 0.0, 0.0}));
    CHECK_THROWS_AS(is_covered(p, Point{0, 0}), UsageError);
  }

  TEST_CASE("closest point and coverage agree with brute force") {
    for (int d : {2, 3, 4}) {
      CAPTURE(d);
      for (double delta : {0.01, 0.3}) {
        const LatticeParams p(d, delta);
        Rng rng(1000 + static_cast<std::uint64_t>(d));
        const int queries = d == 4 ? 1500 : 4000;
        for (int q = 0; q < queries; ++q) {
          const Point c = random_point(rng, d, -25.0, 25.0);
          const auto brute = ref::brute_nearest(delta, c.coords());
          const auto hit = closest_lattice_point(p, c);
          REQUIRE(std::abs(hit.distance - brute.distance) <= 1e-9);
          if (brute.runner_up - brute.distance > 1e-9) CHECK(hit.coeffs == brute.coeffs);
          // Membership: the point is the integer combination of the basis.
          const auto recon = ref::coords_of(delta, hit.coeffs);
          for (int i = 0; i < d; ++i) CHECK(std::abs(recon[static_cast<std::size_t>(i)] - hit.point[i]) <= 1e-9);
          if (std::abs(brute.distance - 1.0) > 1e-9) {
            REQUIRE(is_covered(p, c) == (brute.distance <= 1.0));
          }
        }
      }
    }
  }

  TEST_CASE("coverage near lattice points matches brute force") {
    // Uniform queries are mostly uncovered; sample around lattice points too.
    const LatticeParams p(3, 0.01);
    Rng rng(77);
    int covered = 0;
    for (int q = 0; q < 4000; ++q) {
      CoeffVector a{static_cast<std::int64_t>(rng.below(9)) - 4, static_cast<std::int64_t>(rng.below(9)) - 4,
                    static_cast<std::int64_t>(rng.below(9)) - 4};
      const Point c = lattice_point(p, a) + random_point(rng, 3, -1.2, 1.2);
      const auto brute = ref::brute_nearest(0.01, c.coords());
      if (std::abs(brute.distance - 1.0) <= 1e-9) continue;
      CHECK(is_covered(p, c) == (brute.distance <= 1.0));
      covered += brute.distance <= 1.0 ? 1 : 0;
    }
    CHECK(covered > 1000);
  }

  TEST_CASE("minimum pairwise distance exceeds 4") {
    const LatticeParams p(3, 0.01);
    // Frozen from exhaustive enumeration in compute_expected.py.
    CHECK(min_pairwise_distance(p, 1) == doctest::Approx(4.002502342285386).epsilon(1e-12));
    CHECK(min_pairwise_distance(p, 2) == doctest::Approx(4.002502342285386).epsilon(1e-12));
    CHECK(min_pairwise_distance(p, 2) == doctest::Approx(std::sqrt(2.005 * 2.005 + 12.0)));
    CHECK_THROWS_AS(min_pairwise_distance(p, 0), UsageError);
    for (int d : {2, 3, 4}) {
      for (double delta : {1e-3, 0.01, 0.5}) {
        const double m = min_pairwise_distance(LatticeParams(d, delta), d == 4 ? 2 : 3);
        CAPTURE(d);
        CAPTURE(delta);
        CHECK(m > 4.0);
      }
    }
  }

  TEST_CASE("acceptance probability") {
    // Frozen from compute_expected.py: (4 pi / 3) / 48.12.
    CHECK(filter_acceptance_probability(LatticeParams(3, 0.01)) ==
          doctest::Approx(0.08704884049847031).epsilon(1e-12));
    const double p0 = filter_acceptance_probability(LatticeParams(3, 1e-12));
    CHECK(p0 == doctest::Approx(std::numbers::pi / 36.0).epsilon(1e-9));
    CHECK(1.0 / p0 == doctest::Approx(11.459155902616464).epsilon(1e-9));
    CHECK(std::abs(1.0 / p0 - 11.46) < 0.01);
    const double r4 = 1.0 / filter_acceptance_probability(LatticeParams(4, 1e-12));
    CHECK(r4 == doctest::Approx(192.0 * kSqrt3 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
    CHECK(std::abs(r4 - 33.8) < 0.15);
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.1887902047863905));
  }

  TEST_CASE("Monte Carlo volume of box intersect U") {
    const LatticeParams p(3, 0.01);
    const SampleBox b(p, Point{0.3, -1.7, 2.2});
    CHECK(b.extents()[0] == doctest::Approx(4.01));
    CHECK(b.extents()[1] == doctest::Approx(2.0 * kSqrt3));
    CHECK(b.volume() == doctest::Approx(48.12));
    const auto est = mc_volume_fraction(p, b, 400000, 9);
    CHECK(std::abs(est.volume - unit_ball_volume(3)) <= 3.0 * est.volume_stderr);
    CHECK(std::abs(est.fraction - 0.08704884049847031) <= 3.0 * est.fraction_stderr);
    CHECK(est.volume == doctest::Approx(est.fraction * b.volume()));

    Rng rng(31);
    const SampleBox moved(p, random_point(rng, 3, -50, 50));
    const auto other = mc_volume_fraction(p, moved, 400000, 10);
    const double combined = std::hypot(est.volume_stderr, other.volume_stderr);
    CHECK(std::abs(est.volume - other.volume) <= 3.0 * combined);

    CHECK(mc_volume_fraction(p, b, 1000, 4).volume == mc_volume_fraction(p, b, 1000, 4).volume);
    CHECK_THROWS_AS(mc_volume_fraction(p, b, 0, 1), UsageError);
  }
}
