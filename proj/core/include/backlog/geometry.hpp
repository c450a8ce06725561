#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace backlog {

/// A location in the plane. Coordinates are plain distance units and must
/// be finite.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// An ordered set of pairwise-distinct points. The index of a point in the
/// underlying vector is its stable id (0..n-1).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points);

  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](int id) const { return points_[static_cast<size_t>(id)]; }
  const std::vector<Point>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<Point> points_;
};

/// Axis-aligned square, lower-left corner at `origin`.
struct Square {
  Point origin;
  double side = 0.0;

  bool contains(const Point& p) const {
    return p.x >= origin.x && p.x <= origin.x + side &&
           p.y >= origin.y && p.y <= origin.y + side;
  }
};

/// Side used for the bounding square of a single point, so downstream
/// scaling never divides by zero.
inline constexpr double kMinSquareSide = 1e-9;

/// Maximum pairwise Euclidean distance; 0 for a singleton. O(n^2).
/// Throws std::invalid_argument("empty point set") on an empty set.
double diameter(const PointSet& ps);

/// Smallest axis-aligned square of side max(diameter, kMinSquareSide) that
/// contains every point, centered on the bounding box of the set.
Square bounding_square(const PointSet& ps);

}  // namespace backlog
