#include "geomis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geomis/errors.hpp"

namespace geomis {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw UsageError("point must have at least one coordinate");
  for (double x : coords_) {
    if (!std::isfinite(x)) throw UsageError("point coordinates must be finite");
  }
}

Point Point::zero(int dim) {
  if (dim < 1) throw UsageError("point dimension must be positive");
  return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

Point Point::operator+(const Point& other) const {
  require_same_dim(dim(), other.dim(), "point addition");
  std::vector<double> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.coords_[i];
  return Point(std::move(out));
}

Point Point::operator-(const Point& other) const {
  require_same_dim(dim(), other.dim(), "point subtraction");
  std::vector<double> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.coords_[i];
  return Point(std::move(out));
}

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "distance");
  double sum = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

Ball::Ball(Point center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw UsageError("ball radius must be positive");
}

HyperRectangle::HyperRectangle(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_dim(lo_.dim(), hi_.dim(), "hyper-rectangle");
  for (int i = 0; i < lo_.dim(); ++i) {
    if (!(lo_[i] < hi_[i])) {
      throw UsageError("hyper-rectangle needs lo < hi on axis " + std::to_string(i));
    }
  }
}

double HyperRectangle::min_side() const {
  double m = side(0);
  for (int i = 1; i < dim(); ++i) m = std::min(m, side(i));
  return m;
}

double HyperRectangle::diagonal() const {
  double sum = 0.0;
  for (int i = 0; i < dim(); ++i) sum += side(i) * side(i);
  return std::sqrt(sum);
}

bool balls_intersect(const Ball& a, const Ball& b) {
  // Compare squared quantities; r1 + r2 >= 0 so squaring preserves the order.
  const double reach = a.radius() + b.radius();
  return squared_distance(a.center(), b.center()) <= reach * reach;
}

bool rects_intersect(const HyperRectangle& a, const HyperRectangle& b) {
  require_same_dim(a.dim(), b.dim(), "rects_intersect");
  for (int i = 0; i < a.dim(); ++i) {
    if (a.hi()[i] < b.lo()[i] || b.hi()[i] < a.lo()[i]) return false;
  }
  return true;
}

SizedObject::SizedObject(Ball ball)
    : shape_(std::move(ball)), width_(std::get<Ball>(shape_).radius()), alpha_(1.0) {}

SizedObject::SizedObject(HyperRectangle rect) : shape_(std::move(rect)) {
  const auto& r = std::get<HyperRectangle>(shape_);
  width_ = r.min_side() / 2.0;
  alpha_ = r.min_side() / r.diagonal();
}

int SizedObject::dim() const {
  return std::visit([](const auto& s) { return s.dim(); }, shape_);
}

bool objects_intersect(const SizedObject& a, const SizedObject& b) {
  if (a.is_ball() && b.is_ball()) return balls_intersect(a.ball(), b.ball());
  if (a.is_rect() && b.is_rect()) return rects_intersect(a.rect(), b.rect());
  throw UsageError("ball/hyper-rectangle intersection is not supported");
}

Graph intersection_graph(std::span<const SizedObject> objects) {
  const int n = static_cast<int>(objects.size());
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (objects_intersect(objects[static_cast<std::size_t>(i)],
                            objects[static_cast<std::size_t>(j)])) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

}  // namespace geomis
