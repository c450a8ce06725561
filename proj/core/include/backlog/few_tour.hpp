#pragma once

#include <vector>

#include "backlog/geometry.hpp"

namespace backlog {

// Open polyline; length is the sum of consecutive segment lengths.
struct Path {
  std::vector<Point> waypoints;
  double length = 0.0;
};

// Closed polyline; first and last waypoints coincide.
struct Tour {
  std::vector<Point> waypoints;
  double length = 0.0;
};

double polyline_length(const std::vector<Point>& waypoints);

// Short path through every point of ps inside sq, built with the strip
// (serpentine) method.  length <= (sqrt(2n) + 1.75) * sq.side.
Path few_path(const PointSet& ps, const Square& sq);

// The length budget few_path guarantees for n points in a square of `side`.
double few_path_bound(int n, double side);

// Closed tour that starts at p, visits every point of qs, and returns to p.
// For |qs| = 25^i the length is at most 5^{i+1} * sq.side.
Tour closed_tour(const Point& p, const PointSet& qs, const Square& sq);

// The tour budget 5^{i+1} * side for 25^i visited points.
double closed_tour_bound(int i, double side);

}  // namespace backlog
