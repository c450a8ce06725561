#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "backlog/engine.hpp"
#include "backlog/strategies.hpp"
#include "backlog/trace.hpp"

namespace backlog {

// After each invocation (i, L, ell) at (10L+ell)*tau_i, checks at
// (10L+ell+1)*tau_i that no cup holds 3*tau_i/k_i or more of the water
// poured during [10L*tau_i, (10L+ell)*tau_i].
class WaterCapMonitor final : public Monitor {
 public:
  explicit WaterCapMonitor(ScheduleParams params) : params_(params) {}

  void on_event(const TraceEvent& ev, const Simulation& sim) override;
  double next_check_time() const override;
  void on_check(const Simulation& sim) override;

 private:
  struct Pending {
    int level;
    long long big_l;
    int ell;
  };
  ScheduleParams params_;
  std::multimap<double, Pending> pending_;
};

// Watches invoke/return/resume events: a level must return before it is
// invoked again, the stack discipline must hold, and the total touring
// time of levels <= i inside any period [j*tau_i, (j+1)*tau_i] must stay
// within tau_i * (1 - 2^-(i+1)). Move segments never straddle a period
// boundary because every boundary is an invocation epoch.
class BusyMonitor final : public Monitor {
 public:
  explicit BusyMonitor(ScheduleParams params);

  void on_event(const TraceEvent& ev, const Simulation& sim) override;
  void on_finish(const Simulation& sim) override;

 private:
  ScheduleParams params_;
  std::vector<bool> live_;
  std::vector<int> shadow_stack_;
  // per level h: fine period index j0 (units of tau0) -> touring time
  std::vector<std::map<long long, double>> fine_busy_;
};

// At every sample with t >= tau0, splits [0, t] into the digit windows of
// decompose_time plus a remainder and checks, per window, the water cap
// that the layered schedule guarantees, that the caps sum to at most
// 120*d, and that the observed backlog is bounded by the window maxima.
// Only meaningful on runs driven by the coroutine strategy.
class DecompositionMonitor final : public Monitor {
 public:
  explicit DecompositionMonitor(ScheduleParams params) : params_(params) {}

  void on_event(const TraceEvent& ev, const Simulation& sim) override;

 private:
  ScheduleParams params_;
};

// Samples random windows at random check times; verifies that the water
// still present from a fixed window never increases as time passes, and
// that splitting a window at an interior point preserves the total.
class WPropertyMonitor final : public Monitor {
 public:
  WPropertyMonitor(std::uint64_t seed, int n_checks, double horizon);

  double next_check_time() const override;
  void on_check(const Simulation& sim) override;

 private:
  struct StoredWindow {
    double t1;
    double t2;
    double last_value;
  };
  std::mt19937_64 gen_;
  std::vector<double> checks_;
  std::size_t idx_ = 0;
  std::vector<StoredWindow> stored_;
};

// End-of-run bookkeeping: water in cups plus water removed must equal
// water poured (within 1e-6), and total poured must respect rate 1.
class ConservationMonitor final : public Monitor {
 public:
  void on_finish(const Simulation& sim) override;
};

// Re-integrates a trace with an independent accumulator: pour events set
// rates, empty amounts and sampled backlogs must match within 1e-9, move
// segments must chain and respect unit speed. Returns discrepancies.
std::vector<std::string> replay_trace_check(
    const PointSet& cups, const Point& start,
    const std::vector<TraceEvent>& events);

// n >= 2 points of diameter exactly 1: (0,0), (1,0), and n-2 random
// points strictly inside the disk of diameter 1 spanned by them.
PointSet make_unit_diameter_cups(int n, std::uint64_t seed);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
};

CriterionResult criterion_tauk_bound();         // 1
CriterionResult criterion_tauk_tightness();     // 2
CriterionResult criterion_few_path_bound();     // 3
CriterionResult criterion_closed_tour_bound();  // 4
CriterionResult criterion_schedule_feasibility();  // 5
CriterionResult criterion_water_caps();          // 6
CriterionResult criterion_backlog_120d(std::ostream* progress = nullptr);  // 7
CriterionResult criterion_two_cup_lower();      // 8
CriterionResult criterion_w_calculus();         // 9
CriterionResult criterion_decompose_time();     // 10

// Runs criteria 1..10 in order; progress (if given) gets one line per
// finished criterion.
std::vector<CriterionResult> run_acceptance_suite(
    std::ostream* progress = nullptr);

}  // namespace backlog
