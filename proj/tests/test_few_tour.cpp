#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "backlog/few_tour.hpp"
#include "backlog/rng.hpp"
#include "doctest.h"

using namespace backlog;

namespace {

bool visits_all(const std::vector<Point>& waypoints, const PointSet& ps) {
  for (const Point& p : ps) {
    if (std::find(waypoints.begin(), waypoints.end(), p) == waypoints.end()) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("few_tour") {

TEST_CASE("polyline length sums segments") {
  CHECK(polyline_length({}) == 0.0);
  CHECK(polyline_length({Point{0.5, 0.5}}) == 0.0);
  CHECK(polyline_length({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}}) ==
        2.0);
}

TEST_CASE("single point path is the point itself") {
  const Square sq{Point{0.0, 0.0}, 1.0};
  const Path path = few_path(PointSet({Point{0.25, 0.5}}), sq);
  CHECK(path.length == 0.0);
  REQUIRE(!path.waypoints.empty());
  CHECK(visits_all(path.waypoints, PointSet({Point{0.25, 0.5}})));
}

TEST_CASE("path bound oracle values") {
  CHECK(few_path_bound(1, 1.0) == doctest::Approx(std::sqrt(2.0) + 1.75));
  CHECK(few_path_bound(2, 1.0) == doctest::Approx(3.75));
  CHECK(few_path_bound(8, 2.0) == doctest::Approx(2.0 * (4.0 + 1.75)));
}

TEST_CASE("two diagonal points stay within the bound") {
  const Square sq{Point{0.0, 0.0}, 1.0};
  const PointSet ps({Point{0.0, 0.0}, Point{1.0, 1.0}});
  const Path path = few_path(ps, sq);
  CHECK(visits_all(path.waypoints, ps));
  CHECK(std::abs(path.length - polyline_length(path.waypoints)) <= 1e-12);
  CHECK(path.length <= few_path_bound(2, 1.0));
}

TEST_CASE("points outside the square are rejected") {
  const Square sq{Point{0.0, 0.0}, 1.0};
  CHECK_THROWS_WITH_AS(few_path(PointSet({Point{2.0, 0.0}}), sq),
                       "point outside square", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      closed_tour(Point{-1.0, 0.0}, PointSet({Point{0.5, 0.5}}), sq),
      "point outside square", std::invalid_argument);
}

TEST_CASE("random instances: visits all, consistent length, within bound") {
  std::mt19937_64 gen(42);
  const Square sq{Point{0.0, 0.0}, 1.0};
  for (int inst = 0; inst < 200; ++inst) {
    const int n = 1 + static_cast<int>(uniform_below(gen, 120));
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pts.push_back(Point{uniform01(gen), uniform01(gen)});
    }
    const PointSet ps(pts);
    const Path path = few_path(ps, sq);
    CHECK(visits_all(path.waypoints, ps));
    CHECK(std::abs(path.length - polyline_length(path.waypoints)) <= 1e-9);
    CHECK(path.length <= few_path_bound(n, 1.0));
  }
}

TEST_CASE("scaled square scales the guarantee") {
  std::mt19937_64 gen(7);
  const double side = 3.5;
  const Square sq{Point{1.0, -2.0}, side};
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) {
    pts.push_back(Point{1.0 + uniform01(gen) * side,
                        -2.0 + uniform01(gen) * side});
  }
  const Path path = few_path(PointSet(pts), sq);
  CHECK(path.length <= few_path_bound(64, side));
}

TEST_CASE("closed tour is a loop through p and all of Q") {
  const Square sq{Point{0.0, 0.0}, 1.0};
  const Point p{0.0, 0.0};
  const PointSet qs({Point{1.0, 1.0}});
  const Tour tour = closed_tour(p, qs, sq);
  REQUIRE(tour.waypoints.size() >= 2);
  CHECK(tour.waypoints.front() == p);
  CHECK(tour.waypoints.back() == p);
  CHECK(visits_all(tour.waypoints, qs));
  CHECK(std::abs(tour.length - 2.0 * std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("closed tour over the start point alone has zero length") {
  const Square sq{Point{0.0, 0.0}, 1.0};
  const Point p{0.5, 0.5};
  const Tour tour = closed_tour(p, PointSet({p}), sq);
  CHECK(tour.length == 0.0);
  CHECK(tour.waypoints.front() == p);
  CHECK(tour.waypoints.back() == p);
}

TEST_CASE("tour bound oracle values") {
  CHECK(closed_tour_bound(0, 1.0) == 5.0);
  CHECK(closed_tour_bound(1, 1.0) == 25.0);
  CHECK(closed_tour_bound(2, 2.0) == 250.0);
}

TEST_CASE("random closed tours stay within 5^(i+1) times the side") {
  std::mt19937_64 gen(13);
  const Square sq{Point{0.0, 0.0}, 1.0};
  for (int inst = 0; inst < 50; ++inst) {
    std::vector<Point> pts;
    for (int i = 0; i < 25; ++i) {
      pts.push_back(Point{uniform01(gen), uniform01(gen)});
    }
    const Point p{uniform01(gen), uniform01(gen)};
    const Tour tour = closed_tour(p, PointSet(pts), sq);
    CHECK(tour.waypoints.front() == p);
    CHECK(tour.waypoints.back() == p);
    CHECK(tour.length <= closed_tour_bound(1, 1.0));
  }
}

}  // TEST_SUITE
