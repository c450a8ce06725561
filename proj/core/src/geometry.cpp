#include "backlog/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace backlog {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("empty point set");
  }
  for (const Point& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("non-finite coordinate");
    }
  }
  for (size_t i = 0; i < points_.size(); ++i) {
    for (size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i] == points_[j]) {
        throw std::invalid_argument("duplicate point in point set");
      }
    }
  }
}

double diameter(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("empty point set");
  double best = 0.0;
  const auto& pts = ps.points();
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, distance(pts[i], pts[j]));
    }
  }
  return best;
}

Square bounding_square(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("empty point set");
  double min_x = ps[0].x, max_x = ps[0].x;
  double min_y = ps[0].y, max_y = ps[0].y;
  for (const Point& p : ps) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double side = std::max(diameter(ps), kMinSquareSide);

  // Pad each axis symmetrically around the bounding box. A set of diameter D
  // extends at most D along any axis, so the square always fits.
  auto place = [side](double lo, double hi) {
    const double pad = (side - (hi - lo)) / 2.0;
    double origin = pad > 0.0 ? lo - pad : lo;
    // Guard the upper edge against rounding in the pad arithmetic.
    while (origin + side < hi) origin = std::nextafter(origin, -HUGE_VAL);
    return origin;
  };

  Square sq;
  sq.side = side;
  sq.origin = Point{place(min_x, max_x), place(min_y, max_y)};
  return sq;
}

}  // namespace backlog
