#include "backlog/few_tour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace backlog {

double polyline_length(const std::vector<Point>& waypoints) {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    len += distance(waypoints[i - 1], waypoints[i]);
  }
  return len;
}

double few_path_bound(int n, double side) {
  return (std::sqrt(2.0 * n) + 1.75) * side;
}

double closed_tour_bound(int i, double side) {
  return std::pow(5.0, i + 1) * side;
}

namespace {

// Indices of pts in serpentine order over horizontal strips of height 1/q
// (in square-relative coordinates).  Family A centers strips on the lines
// y = j/q, j = 0..q; family B on the half-offset lines y = (2j+1)/(2q),
// j = 0..q-1.  A point on a strip boundary goes to the lower strip.
std::vector<int> serpentine_order(const std::vector<Point>& pts,
                                  const Square& sq, int q,
                                  bool offset_family) {
  const int strips = offset_family ? q : q + 1;
  std::vector<std::vector<int>> buckets(strips);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    double t = (pts[i].y - sq.origin.y) / sq.side * static_cast<double>(q);
    t = std::clamp(t, 0.0, static_cast<double>(q));
    int j;
    if (offset_family) {
      j = static_cast<int>(std::floor(t));
      if (static_cast<double>(j) == t && j > 0) --j;
    } else {
      j = static_cast<int>(std::floor(t + 0.5));
      if (static_cast<double>(j) - t == 0.5) --j;
    }
    j = std::clamp(j, 0, strips - 1);
    buckets[j].push_back(i);
  }

  std::vector<int> order;
  order.reserve(pts.size());
  for (int j = 0; j < strips; ++j) {
    auto& b = buckets[j];
    std::sort(b.begin(), b.end(), [&](int a, int c) {
      if (pts[a].x != pts[c].x) return pts[a].x < pts[c].x;
      return pts[a].y < pts[c].y;
    });
    if (j % 2 == 1) std::reverse(b.begin(), b.end());
    order.insert(order.end(), b.begin(), b.end());
  }
  return order;
}

}  // namespace

Path few_path(const PointSet& ps, const Square& sq) {
  const int n = ps.size();
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!sq.contains(ps[i])) {
      throw std::invalid_argument("point outside square");
    }
    pts.push_back(ps[i]);
  }
  if (n == 1) {
    return Path{std::move(pts), 0.0};
  }

  // Both strip families over a small window of strip counts around
  // sqrt(n/2); the better of the two families at the rounded value already
  // meets the sqrt(2n) + 1.75 budget.
  const int q0 = std::max<int>(
      1, static_cast<int>(std::llround(std::sqrt(n / 2.0))));
  Path best;
  bool have = false;
  for (int q = std::max(1, q0 - 2); q <= q0 + 3; ++q) {
    for (int family = 0; family < 2; ++family) {
      const std::vector<int> order =
          serpentine_order(pts, sq, q, family == 1);
      std::vector<Point> wp;
      wp.reserve(n);
      for (int idx : order) wp.push_back(pts[idx]);
      const double len = polyline_length(wp);
      if (!have || len < best.length) {
        best = Path{std::move(wp), len};
        have = true;
      }
    }
  }
  return best;
}

Tour closed_tour(const Point& p, const PointSet& qs, const Square& sq) {
  if (!sq.contains(p)) {
    throw std::invalid_argument("point outside square");
  }
  std::vector<Point> pts;
  pts.reserve(qs.size() + 1);
  for (int i = 0; i < qs.size(); ++i) pts.push_back(qs[i]);
  if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
    pts.push_back(p);
  }

  const Path path = few_path(PointSet(std::move(pts)), sq);
  if (path.waypoints.size() == 1) {
    return Tour{{p}, 0.0};
  }

  // Close the path and rotate the cycle so it starts and ends at p.
  const auto& w = path.waypoints;
  const int m = static_cast<int>(w.size());
  const int r = static_cast<int>(std::find(w.begin(), w.end(), p) - w.begin());
  std::vector<Point> cyc;
  cyc.reserve(m + 1);
  for (int i = 0; i <= m; ++i) cyc.push_back(w[(r + i) % m]);
  const double len = polyline_length(cyc);
  return Tour{std::move(cyc), len};
}

}  // namespace backlog
