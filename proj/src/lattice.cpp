#include "geomis/lattice.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geomis/errors.hpp"
#include "geomis/rng.hpp"

namespace geomis {

namespace {

const double kSqrt3 = std::sqrt(3.0);

std::int64_t floor_to_int(double x) { return static_cast<std::int64_t>(std::floor(x)); }

bool is_even(std::int64_t x) { return x % 2 == 0; }

// Multiplier of (2 + delta/2) nearest to x1 among those with parity of `sum`.
// Writing x1 = h*z + y with y in [0, h): keep z if it has the right parity,
// otherwise step up to z + 1.
std::int64_t parity_multiplier(double x1, double h, std::int64_t sum) {
  const std::int64_t z = floor_to_int(x1 / h);
  return is_even(z - sum) ? z : z + 1;
}

// Squared distance from c to the parity-rounded lattice point; fills the
// coefficients when `coeffs` is non-null. No allocation on the hot path.
double parity_round(const LatticeParams& params, std::span<const double> c,
                    std::int64_t* coeffs) {
  const double step = LatticeParams::axis_step();
  const double h = params.half_step_x1();
  std::int64_t sum = 0;
  double sq = 0.0;
  for (int i = 1; i < params.dim(); ++i) {
    const double x = c[static_cast<std::size_t>(i)];
    // x = z*sqrt(3) + y, y in [0, sqrt 3): even z stays, odd z rounds up.
    const std::int64_t z = floor_to_int(x / kSqrt3);
    const std::int64_t a = is_even(z) ? z / 2 : (z + 1) / 2;
    const double diff = x - static_cast<double>(a) * step;
    sq += diff * diff;
    sum += a;
    if (coeffs != nullptr) coeffs[i] = a;
  }
  const std::int64_t m = parity_multiplier(c[0], h, sum);
  const double diff = c[0] - static_cast<double>(m) * h;
  sq += diff * diff;
  if (coeffs != nullptr) coeffs[0] = (m + sum) / 2;
  return sq;
}

void require_dim(const LatticeParams& params, int dim, const char* what) {
  if (params.dim() != dim) {
    throw UsageError(std::string(what) + ": expected dimension " + std::to_string(params.dim()) +
                     ", got " + std::to_string(dim));
  }
}

LatticeHit make_hit(const LatticeParams& params, const Point& c, CoeffVector coeffs) {
  Point p = lattice_point(params, coeffs);
  const double d = distance(p, c);
  return LatticeHit{std::move(p), std::move(coeffs), d};
}

}  // namespace

LatticeParams::LatticeParams(int dim, double delta) : dim_(dim), delta_(delta) {
  if (dim < 2) throw UsageError("lattice dimension must be at least 2");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError("lattice delta must be positive");
}

double LatticeParams::axis_step() { return 2.0 * kSqrt3; }

Point LatticeParams::basis(int i) const {
  if (i < 0 || i >= dim_) throw UsageError("basis index out of range");
  std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
  if (i == 0) {
    v[0] = period_x1();
  } else {
    v[0] = -half_step_x1();
    v[static_cast<std::size_t>(i)] = axis_step();
  }
  return Point(std::move(v));
}

double LatticeParams::cell_volume() const {
  return period_x1() * std::pow(axis_step(), dim_ - 1);
}

Point lattice_point(const LatticeParams& params, const CoeffVector& coeffs) {
  require_dim(params, static_cast<int>(coeffs.size()), "lattice_point");
  std::vector<double> x(coeffs.size(), 0.0);
  x[0] = params.period_x1() * static_cast<double>(coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    x[0] -= params.half_step_x1() * static_cast<double>(coeffs[i]);
    x[i] = LatticeParams::axis_step() * static_cast<double>(coeffs[i]);
  }
  return Point(std::move(x));
}

LatticeHit parity_rounding(const LatticeParams& params, const Point& c) {
  require_dim(params, c.dim(), "parity_rounding");
  CoeffVector coeffs(static_cast<std::size_t>(params.dim()));
  parity_round(params, c.coords(), coeffs.data());
  return make_hit(params, c, std::move(coeffs));
}

LatticeHit closest_lattice_point(const LatticeParams& params, const Point& c) {
  require_dim(params, c.dim(), "closest_lattice_point");
  const int d = params.dim();
  const double step = LatticeParams::axis_step();
  const double h = params.half_step_x1();

  std::vector<std::int64_t> lower(static_cast<std::size_t>(d));
  for (int i = 1; i < d; ++i) lower[static_cast<std::size_t>(i)] = floor_to_int(c[i] / step);

  CoeffVector best(static_cast<std::size_t>(d));
  CoeffVector trial(static_cast<std::size_t>(d));
  double best_sq = std::numeric_limits<double>::infinity();
  const std::uint64_t choices = std::uint64_t{1} << (d - 1);
  for (std::uint64_t mask = 0; mask < choices; ++mask) {
    std::int64_t sum = 0;
    double sq = 0.0;
    for (int i = 1; i < d; ++i) {
      const std::int64_t a = lower[static_cast<std::size_t>(i)] + ((mask >> (i - 1)) & 1U);
      const double diff = c[i] - static_cast<double>(a) * step;
      sq += diff * diff;
      sum += a;
      trial[static_cast<std::size_t>(i)] = a;
    }
    const std::int64_t m = parity_multiplier(c[0], h, sum);
    const double diff = c[0] - static_cast<double>(m) * h;
    sq += diff * diff;
    trial[0] = (m + sum) / 2;
    if (sq < best_sq) {
      best_sq = sq;
      best = trial;
    }
  }
  return make_hit(params, c, std::move(best));
}

bool is_covered(const LatticeParams& params, const Point& c) {
  require_dim(params, c.dim(), "is_covered");
  return parity_round(params, c.coords(), nullptr) <= 1.0;
}

double min_pairwise_distance(const LatticeParams& params, int window) {
  if (window < 1) throw UsageError("min_pairwise_distance needs window >= 1");
  const int d = params.dim();
  const std::size_t side = static_cast<std::size_t>(2 * window + 1);
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count *= side;

  std::vector<Point> points;
  points.reserve(count);
  CoeffVector coeffs(static_cast<std::size_t>(d));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < d; ++i) {
      coeffs[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rest % side) - window;
      rest /= side;
    }
    points.push_back(lattice_point(params, coeffs));
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, squared_distance(points[i], points[j]));
    }
  }
  return std::sqrt(best);
}

SampleBox::SampleBox(const LatticeParams& params, Point origin) : origin_(std::move(origin)) {
  require_dim(params, origin_.dim(), "SampleBox");
  extents_.assign(static_cast<std::size_t>(params.dim()), LatticeParams::axis_step());
  extents_[0] = params.period_x1();
}

double SampleBox::volume() const {
  double v = 1.0;
  for (double e : extents_) v *= e;
  return v;
}

VolumeEstimate mc_volume_fraction(const LatticeParams& params, const SampleBox& box,
                                  std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw UsageError("mc_volume_fraction needs at least one sample");
  require_dim(params, box.origin().dim(), "mc_volume_fraction");
  Rng rng(seed);
  const auto d = static_cast<std::size_t>(params.dim());
  std::vector<double> x(d);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = box.origin()[static_cast<int>(i)] + box.extents()[i] * rng.uniform();
    }
    if (parity_round(params, x, nullptr) <= 1.0) ++hits;
  }
  const double n = static_cast<double>(samples);
  const double f = static_cast<double>(hits) / n;
  const double se = std::sqrt(f * (1.0 - f) / n);
  const double vol = box.volume();
  return VolumeEstimate{f, se, f * vol, se * vol, samples};
}

double unit_ball_volume(int dim) {
  if (dim < 1) throw UsageError("unit_ball_volume needs dim >= 1");
  const double half = static_cast<double>(dim) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double filter_acceptance_probability(const LatticeParams& params) {
  return unit_ball_volume(params.dim()) / params.cell_volume();
}

}  // namespace geomis
