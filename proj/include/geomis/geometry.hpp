#pragma once

#include <span>
#include <variant>
#include <vector>

#include "geomis/graph.hpp"

namespace geomis {

/// A point in R^d. Coordinates are finite doubles; dim >= 1.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  static Point zero(int dim);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return coords_; }

  Point operator+(const Point& other) const;
  Point operator-(const Point& other) const;
  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// Euclidean distance. Throws UsageError on dimension mismatch.
double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

class Ball {
 public:
  Ball(Point center, double radius);

  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  int dim() const { return center_.dim(); }
  bool operator==(const Ball&) const = default;

 private:
  Point center_;
  double radius_;
};

/// Closed axis-aligned box prod_i [lo_i, hi_i] with lo_i < hi_i.
class HyperRectangle {
 public:
  HyperRectangle(Point lo, Point hi);

  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  int dim() const { return lo_.dim(); }
  double side(int axis) const { return hi_[axis] - lo_[axis]; }
  double min_side() const;
  double diagonal() const;
  bool operator==(const HyperRectangle&) const = default;

 private:
  Point lo_;
  Point hi_;
};

// Closed predicates: touching boundaries count as intersecting.
bool balls_intersect(const Ball& a, const Ball& b);
bool rects_intersect(const HyperRectangle& a, const HyperRectangle& b);

/// A geometric arrival payload together with its width and fatness.
///
/// Balls have width = radius and alpha = 1. Rectangles have width = half the
/// shortest side and alpha = shortest side / diagonal; alpha is metadata only.
class SizedObject {
 public:
  using Shape = std::variant<Ball, HyperRectangle>;

  SizedObject(Ball ball);             // NOLINT(google-explicit-constructor)
  SizedObject(HyperRectangle rect);   // NOLINT(google-explicit-constructor)

  const Shape& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_rect() const { return std::holds_alternative<HyperRectangle>(shape_); }
  const Ball& ball() const { return std::get<Ball>(shape_); }
  const HyperRectangle& rect() const { return std::get<HyperRectangle>(shape_); }

  int dim() const;
  double width() const { return width_; }
  double alpha() const { return alpha_; }
  bool operator==(const SizedObject& other) const { return shape_ == other.shape_; }

 private:
  Shape shape_;
  double width_;
  double alpha_;
};

/// Throws UsageError for a ball/rectangle pair or a dimension mismatch.
bool objects_intersect(const SizedObject& a, const SizedObject& b);

/// Intersection graph over the objects, vertex i = objects[i].
Graph intersection_graph(std::span<const SizedObject> objects);

}  // namespace geomis
