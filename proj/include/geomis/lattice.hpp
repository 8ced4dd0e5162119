#pragma once

#include <cstdint>
#include <vector>

#include "geomis/geometry.hpp"

namespace geomis {

/// The well-separated lattice used by the Filter algorithm.
///
/// Basis: v_1 = (4+delta) e_1 and v_i = -(2+delta/2) e_1 + 2*sqrt(3) e_i for
/// i >= 2. Distinct lattice points are more than 4 apart, so the unit balls
/// centred on them (the coverage region U) are pairwise disjoint.
class LatticeParams {
 public:
  explicit LatticeParams(int dim = 3, double delta = kDefaultDelta);

  static constexpr double kDefaultDelta = 0.01;

  int dim() const { return dim_; }
  double delta() const { return delta_; }
  /// Period along x_1, |v_1| = 4 + delta.
  double period_x1() const { return 4.0 + delta_; }
  /// Spacing of admissible x_1 coordinates, 2 + delta/2.
  double half_step_x1() const { return 2.0 + delta_ / 2.0; }
  /// Spacing of admissible x_i coordinates for i >= 2, 2*sqrt(3).
  static double axis_step();
  /// Period along x_i for i >= 2 (2 v_i + v_1 = 4*sqrt(3) e_i).
  static double period_axis() { return 2.0 * axis_step(); }

  Point basis(int i) const;
  /// |det B| = (4+delta) (2 sqrt 3)^(d-1).
  double cell_volume() const;

 private:
  int dim_;
  double delta_;
};

using CoeffVector = std::vector<std::int64_t>;

struct LatticeHit {
  Point point;
  CoeffVector coeffs;
  double distance;
};

/// sum_i coeffs[i] * v_i.
Point lattice_point(const LatticeParams& params, const CoeffVector& coeffs);

/// Constant-time parity-constrained rounding.
///
/// Each x_i (i >= 2) goes to the nearest multiple of 2 sqrt 3; x_1 then goes
/// to the nearest multiple of (2 + delta/2) whose multiplier has the parity
/// of sum_{i>=2} a_i. This always finds the lattice point within distance 1
/// when one exists, but it is not always the closest lattice point.
LatticeHit parity_rounding(const LatticeParams& params, const Point& c);

/// Exact closest lattice point, O(2^(d-1)).
///
/// Runs the x_1 parity rounding for both neighbouring multiples of 2 sqrt 3
/// on every axis i >= 2 and keeps the nearest candidate.
LatticeHit closest_lattice_point(const LatticeParams& params, const Point& c);

/// True iff some lattice point lies within distance 1 (closed) of c.
bool is_covered(const LatticeParams& params, const Point& c);

/// Minimum distance over distinct lattice points with coefficients in [-w, w]^d.
double min_pairwise_distance(const LatticeParams& params, int window);

/// Axis-aligned box with side 4+delta on x_1 and 2 sqrt 3 on every other axis.
class SampleBox {
 public:
  SampleBox(const LatticeParams& params, Point origin);

  const Point& origin() const { return origin_; }
  const std::vector<double>& extents() const { return extents_; }
  double volume() const;

 private:
  Point origin_;
  std::vector<double> extents_;
};

struct VolumeEstimate {
  double fraction;         ///< covered samples / samples
  double fraction_stderr;  ///< binomial standard error of `fraction`
  double volume;           ///< fraction * Vol(box)
  double volume_stderr;
  std::uint64_t samples;
};

/// Hit-or-miss estimate of Vol(box ∩ U). Throws UsageError if samples == 0.
VolumeEstimate mc_volume_fraction(const LatticeParams& params, const SampleBox& box,
                                  std::uint64_t samples, std::uint64_t seed);

double unit_ball_volume(int dim);

/// Probability that a uniformly shifted centre is covered:
/// Vol(unit d-ball) / ((4+delta)(2 sqrt 3)^(d-1)).
double filter_acceptance_probability(const LatticeParams& params);

}  // namespace geomis
