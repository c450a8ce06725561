#include <cmath>
#include <set>
#include <stdexcept>
#include <variant>

#include "backlog/adversaries.hpp"
#include "backlog/allocation.hpp"
#include "backlog/engine.hpp"
#include "backlog/strategies.hpp"
#include "backlog/trace.hpp"
#include "backlog/verify.hpp"
#include "doctest.h"

using namespace backlog;

TEST_SUITE("strategies") {

TEST_CASE("schedule parameters for a unit diameter") {
  const ScheduleParams p = ScheduleParams::make(1.0, 1e5);
  CHECK(p.d == 1.0);
  CHECK(p.tau0 == 10.0);
  CHECK(p.n_levels == 5);
  CHECK(p.k(0) == 1);
  CHECK(p.k(1) == 25);
  CHECK(p.k(2) == 625);
  CHECK(p.tau(0) == 10.0);
  CHECK(p.tau(1) == 100.0);
  CHECK(p.tau(3) == 10000.0);
}

TEST_CASE("epochs of adjacent levels coincide bit-exactly") {
  const ScheduleParams p = ScheduleParams::make(0.73, 5000.0);
  CHECK(p.epoch(0, 10) == p.epoch(1, 1));
  CHECK(p.epoch(0, 100) == p.epoch(2, 1));
  CHECK(p.epoch(1, 10) == p.epoch(2, 1));
  CHECK(p.epoch(0, 37) == 37.0 * p.tau0);
}

TEST_CASE("tour budget equals the closed tour guarantee") {
  for (const double d : {1.0, 0.37, 2.25}) {
    const ScheduleParams p = ScheduleParams::make(d, 1e6);
    for (int i = 0; i < p.n_levels; ++i) {
      const double budget = p.tour_budget(i);
      const double oracle = closed_tour_bound(i, d);
      CHECK(std::abs(budget - oracle) <= 1e-12 * oracle);
    }
  }
  // Exact for d = 1: tau_i / 2^(i+1) = 10^(i+1) / 2^(i+1) = 5^(i+1).
  const ScheduleParams unit = ScheduleParams::make(1.0, 1e6);
  CHECK(unit.tour_budget(0) == 5.0);
  CHECK(unit.tour_budget(1) == 25.0);
  CHECK(unit.tour_budget(2) == 125.0);
}

TEST_CASE("busy budget leaves headroom in every period") {
  const ScheduleParams p = ScheduleParams::make(1.0, 3000.0);
  CHECK(period_busy_budget(0, p) == 5.0);
  CHECK(period_busy_budget(1, p) == 75.0);
  CHECK(period_busy_budget(2, p) == 875.0);
}

TEST_CASE("invocation epochs stop strictly before the horizon") {
  const ScheduleParams p = ScheduleParams::make(1.0, 35.0);
  const auto epochs = invocation_epochs(0, 35.0, p);
  REQUIRE(epochs.size() == 3);
  CHECK(epochs[0].time == 10.0);
  CHECK(epochs[1].time == 20.0);
  CHECK(epochs[2].time == 30.0);
  CHECK(epochs[0].big_l == 0);
  CHECK(epochs[0].ell == 1);
  CHECK(epochs[2].ell == 3);
  const auto none = invocation_epochs(0, 10.0, p);
  CHECK(none.empty());
}

TEST_CASE("invocation indices wrap after ten ticks") {
  const ScheduleParams p = ScheduleParams::make(1.0, 250.0);
  const auto epochs = invocation_epochs(0, 250.0, p);
  REQUIRE(epochs.size() == 24);
  CHECK(epochs[9].big_l == 0);
  CHECK(epochs[9].ell == 10);
  CHECK(epochs[10].big_l == 1);
  CHECK(epochs[10].ell == 1);
  CHECK(epochs[19].big_l == 1);
  CHECK(epochs[19].ell == 10);
  CHECK(epochs[20].big_l == 2);
  CHECK(epochs[20].ell == 1);
}

TEST_CASE("decompose_time digit examples") {
  const TimeDecomposition seven = decompose_time(7);
  CHECK(seven.digits == std::vector<int>{7});
  CHECK(seven.partials == std::vector<long long>{0});

  const TimeDecomposition ten = decompose_time(10);
  CHECK(ten.digits == std::vector<int>{10});
  CHECK(ten.partials == std::vector<long long>{0});

  const TimeDecomposition twenty = decompose_time(20);
  CHECK(twenty.digits == std::vector<int>{10, 1});
  CHECK(twenty.partials == std::vector<long long>{1, 0});

  const TimeDecomposition big = decompose_time(1996);
  CHECK(big.digits == std::vector<int>{6, 9, 9, 1});
  CHECK(big.t == 1996);

  CHECK_THROWS_AS(decompose_time(0), std::invalid_argument);
}

TEST_CASE("backlog bound is 120 diameters") {
  CHECK(backlog_bound(1.0) == 120.0);
  CHECK(backlog_bound(0.5) == 60.0);
  CHECK(backlog_bound(0.0) == 0.0);
  CHECK_THROWS_WITH_AS(backlog_bound(-1.0), "negative diameter",
                       std::invalid_argument);
}

TEST_CASE("cup selection ranks by window water, ties toward smaller ids") {
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 0.4}}),
                 Point{0.5, 0.0}, nullptr);
  const ScheduleParams p = ScheduleParams::make(sim.diameter(), 100.0);
  PourAllocation a;
  a.amounts = {{2, 1.0}};
  sim.set_pour_rates(a);
  sim.wait(3.0);
  CHECK(select_cup_ids(sim, 0, 0, p) == std::vector<int>{2});

  Simulation tie(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}),
                 Point{0.5, 0.0}, nullptr);
  PourAllocation b;
  b.amounts = {{0, 0.5}, {1, 0.5}};
  tie.set_pour_rates(b);
  tie.wait(2.0);
  const ScheduleParams q = ScheduleParams::make(tie.diameter(), 100.0);
  CHECK(select_cup_ids(tie, 0, 0, q) == std::vector<int>{0});
}

TEST_CASE("coroutine schedule on two cups fires level 0 each tau0") {
  MemoryTraceSink sink;
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}),
                 Point{0.0, 0.0}, &sink);
  const ScheduleParams p = ScheduleParams::make(sim.diameter(), 100.0);
  CHECK(p.n_levels == 2);
  CoroutineStrategy strategy(p);
  UniformAdversary adversary;
  BusyMonitor busy(p);
  WaterCapMonitor water_cap(p);
  sim.attach_monitor(&busy);
  sim.attach_monitor(&water_cap);
  RunConfig cfg;
  cfg.horizon = 100.0;
  cfg.delta_adv = 1.0;
  cfg.sample_interval = 5.0;
  const RunReport report = run_game(sim, strategy, adversary, cfg);
  CHECK(report.violations.empty());
  CHECK(busy.failures().empty());
  CHECK(water_cap.failures().empty());

  std::vector<double> invoke_times;
  std::set<int> emptied;
  for (const TraceEvent& ev : sink.events()) {
    if (const auto* inv = std::get_if<InvokeEvent>(&ev.data)) {
      CHECK(inv->level == 0);
      CHECK(inv->tour_length <= inv->budget * (1.0 + 1e-9));
      invoke_times.push_back(ev.t);
    } else if (const auto* em = std::get_if<EmptyEvent>(&ev.data)) {
      emptied.insert(em->cup);
    }
  }
  REQUIRE(invoke_times.size() == 9);
  for (std::size_t i = 0; i < invoke_times.size(); ++i) {
    CHECK(invoke_times[i] == 10.0 * static_cast<double>(i + 1));
  }
  // The alternating window-water selection reaches both cups.
  CHECK(emptied == std::set<int>{0, 1});
}

TEST_CASE("greedy strategy reports its name and chases the fullest cup") {
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}),
                 Point{0.0, 0.0}, nullptr);
  GreedyStrategy strategy;
  CHECK(strategy.name() == std::string("greedy"));
  FullestCupAdversary adversary;
  RunConfig cfg;
  cfg.horizon = 30.0;
  cfg.delta_adv = 0.5;
  const RunReport report = run_game(sim, strategy, adversary, cfg);
  CHECK(report.violations.empty());
  CHECK(report.total_emptied > 0.0);
  CHECK(report.max_backlog <= 4.0);
}

TEST_CASE("static loop keeps both cups bounded under a static pour") {
  MemoryTraceSink sink;
  Simulation sim(PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}),
                 Point{0.0, 0.0}, &sink);
  StaticLoopStrategy strategy;
  CHECK(strategy.name() == std::string("static-loop"));
  DiameterEndpointsAdversary adversary;
  RunConfig cfg;
  cfg.horizon = 25.0;
  cfg.delta_adv = 1.0;
  const RunReport report = run_game(sim, strategy, adversary, cfg);
  CHECK(report.violations.empty());
  std::set<int> emptied;
  for (const TraceEvent& ev : sink.events()) {
    if (const auto* em = std::get_if<EmptyEvent>(&ev.data)) {
      emptied.insert(em->cup);
    }
  }
  CHECK(emptied == std::set<int>{0, 1});
  CHECK(report.max_backlog <= 1.0 + 1e-9);
}

}  // TEST_SUITE
