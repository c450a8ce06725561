#include <cmath>
#include <random>

#include "backlog/adversaries.hpp"
#include "backlog/allocation.hpp"
#include "backlog/engine.hpp"
#include "backlog/rng.hpp"
#include "doctest.h"

using namespace backlog;

namespace {

Simulation unit_pair(Point start = Point{0.0, 0.0}) {
  return Simulation(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}), start,
                    nullptr);
}

bool valid_allocation(const PourAllocation& a, int n) {
  double sum = 0.0;
  for (const auto& [id, rate] : a.amounts) {
    if (id < 0 || id >= n) return false;
    if (!(rate >= 0.0)) return false;
    sum += rate;
  }
  return sum <= 1.0 + 1e-9;
}

}  // namespace

TEST_SUITE("adversaries") {

TEST_CASE("diameter endpoints split the unit rate over a fixed pair") {
  Simulation sim = unit_pair();
  DiameterEndpointsAdversary adv;
  CHECK(adv.is_static());
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 2);
  CHECK(a.amounts.at(0) == 0.5);
  CHECK(a.amounts.at(1) == 0.5);
  sim.wait(3.0);
  CHECK(adv.allocate(sim).amounts == a.amounts);
}

TEST_CASE("diameter endpoints pick the smallest-id diagonal of a square") {
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0},
                           Point{1.0, 1.0}}),
                 Point{0.5, 0.5}, nullptr);
  DiameterEndpointsAdversary adv;
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 2);
  CHECK(a.amounts.count(0) == 1);
  CHECK(a.amounts.count(3) == 1);
}

TEST_CASE("diameter endpoints on a single cup pour everything into it") {
  Simulation sim(PointSet({Point{0.5, 0.5}}), Point{0.5, 0.5}, nullptr);
  DiameterEndpointsAdversary adv;
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 1);
  CHECK(a.amounts.at(0) == 1.0);
}

TEST_CASE("farthest cup wins, ties break toward the smaller id") {
  Simulation sim = unit_pair(Point{0.25, 0.0});
  FarthestFromPlayerAdversary adv;
  CHECK_FALSE(adv.is_static());
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 1);
  CHECK(a.amounts.at(1) == 1.0);

  Simulation mid = unit_pair(Point{0.5, 0.0});
  const PourAllocation b = adv.allocate(mid);
  REQUIRE(b.amounts.size() == 1);
  CHECK(b.amounts.at(0) == 1.0);
}

TEST_CASE("fullest cup follows the current levels") {
  Simulation sim = unit_pair();
  FullestCupAdversary adv;
  PourAllocation seed;
  seed.amounts = {{1, 1.0}};
  sim.set_pour_rates(seed);
  sim.wait(1.0);
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 1);
  CHECK(a.amounts.at(1) == 1.0);
}

TEST_CASE("uniform spreads the rate over every cup") {
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 0.5},
                           Point{0.25, 0.25}}),
                 Point{0.5, 0.5}, nullptr);
  UniformAdversary adv;
  CHECK(adv.is_static());
  const PourAllocation a = adv.allocate(sim);
  REQUIRE(a.amounts.size() == 4);
  for (const auto& [id, rate] : a.amounts) CHECK(rate == 0.25);
}

TEST_CASE("random adversary is reproducible and normalized") {
  Simulation sim = unit_pair();
  RandomSubsetAdversary a(99);
  RandomSubsetAdversary b(99);
  RandomSubsetAdversary c(100);
  bool same = true;
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const PourAllocation x = a.allocate(sim);
    const PourAllocation y = b.allocate(sim);
    const PourAllocation z = c.allocate(sim);
    CHECK(valid_allocation(x, sim.n()));
    CHECK(std::abs(x.total() - 1.0) <= 1e-9);
    same = same && x.amounts == y.amounts;
    differs = differs || !(x.amounts == z.amounts);
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("every adversary emits a valid allocation on random worlds") {
  std::mt19937_64 gen(321);
  for (int world = 0; world < 30; ++world) {
    const int n = 2 + static_cast<int>(uniform_below(gen, 19));
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      const Point p{uniform01(gen), uniform01(gen)};
      bool dup = false;
      for (const Point& q : pts) dup = dup || q == p;
      if (!dup) pts.push_back(p);
    }
    Simulation sim(PointSet(pts), pts[0], nullptr);
    PourAllocation warm;
    warm.amounts = {{n - 1, 1.0}};
    sim.set_pour_rates(warm);
    sim.wait(uniform01(gen) * 5.0);
    for (const std::string& name : adversary_names()) {
      const auto kind = adversary_kind_from_name(name);
      REQUIRE(kind.has_value());
      const auto adv = make_adversary(*kind, 7);
      CHECK(adv->name() == name);
      CHECK(valid_allocation(adv->allocate(sim), sim.n()));
    }
  }
}

TEST_CASE("adversary names round-trip") {
  for (const std::string& name : adversary_names()) {
    const auto kind = adversary_kind_from_name(name);
    REQUIRE(kind.has_value());
    CHECK(adversary_name(*kind) == name);
  }
  CHECK_FALSE(adversary_kind_from_name("nope").has_value());
}

}  // TEST_SUITE
