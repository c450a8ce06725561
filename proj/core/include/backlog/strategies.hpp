#pragma once

#include <optional>
#include <vector>

#include "backlog/engine.hpp"
#include "backlog/few_tour.hpp"
#include "backlog/geometry.hpp"

namespace backlog {

// Timetable of the layered emptying schedule for a cup set of diameter d:
// level i fires every tau(i) = 10^i * tau0 time units, empties up to
// k(i) = 25^i cups per invocation, and may spend at most tau(i) / 2^(i+1)
// on its tour. Epochs are computed from integer tick counts times tau0 so
// that coinciding epochs of different levels compare bit-identically.
struct ScheduleParams {
  double d = 0.0;
  double tau0 = 0.0;  // base period, 10 * d
  int n_levels = 0;   // levels 0 .. n_levels-1 are instantiated

  static ScheduleParams make(double d, double horizon);

  long long k(int level) const;
  double tau(int level) const;
  // Time of the m-th level invocation, m >= 1; bit-exact across levels.
  double epoch(int level, long long m) const;
  double tour_budget(int level) const;
};

// Maximum time the levels 0..level may spend touring inside one tau(level)
// period: tau(level) * (1 - 2^-(level+1)).
double period_busy_budget(int level, const ScheduleParams& params);

struct Invocation {
  int level = 0;
  long long m = 0;  // epoch multiplier, time = m * tau(level)
  long long big_l = 0;
  int ell = 0;  // 1..10
  double time = 0.0;
};

// All level invocations strictly before the horizon, in time order.
std::vector<Invocation> invocation_epochs(int level, double horizon,
                                          const ScheduleParams& params);

// Ids of the min(k(level), n) cups holding the most water poured since
// 10 * big_l * tau(level), most first; ties broken toward the smaller id.
std::vector<int> select_cup_ids(const Simulation& sim, int level,
                                long long big_l,
                                const ScheduleParams& params);
PointSet select_cups(const Simulation& sim, int level, long long big_l,
                     const ScheduleParams& params);

// Breaks t >= 1 into digits ell_i in 1..10 with t = sum ell_i * 10^i.
// partials[i] is the quotient left after digits 0..i are extracted.
struct TimeDecomposition {
  long long t = 0;
  std::vector<int> digits;
  std::vector<long long> partials;
};
TimeDecomposition decompose_time(long long t);

// Guaranteed backlog ceiling for the layered schedule: 120 * d.
double backlog_bound(double d);

// Layered schedule player. Invocations are handled stack-wise: a newly
// fired level preempts the tour in progress, and lower levels always sit
// closer to the top of the stack than higher ones.
class CoroutineStrategy final : public Strategy {
 public:
  explicit CoroutineStrategy(ScheduleParams params);

  double next_epoch_time() const override;
  void on_epoch(Simulation& sim) override;
  std::optional<Point> target(const Simulation& sim) override;
  void on_arrival(Simulation& sim) override;
  int active_level() const override;
  std::string name() const override { return "coroutine"; }

  const ScheduleParams& params() const { return params_; }

 private:
  struct Frame {
    int level = 0;
    long long big_l = 0;
    int ell = 0;
    std::vector<Point> tour;
    std::size_t next_wp = 0;
  };

  ScheduleParams params_;
  std::vector<long long> next_tick_;  // per level, next m to fire (from 1)
  std::vector<Frame> stack_;          // back = active = lowest level
};

// Walks to the fullest cup, empties it, repeats. Idles only when the
// fullest cup is the one it is standing on and that cup is dry.
class GreedyStrategy final : public Strategy {
 public:
  std::optional<Point> target(const Simulation& sim) override;
  void on_arrival(Simulation& sim) override;
  void on_idle(Simulation& sim) override;
  std::string name() const override { return "greedy"; }

 private:
  void replan(const Simulation& sim);
  std::optional<Point> target_;
};

// Walks one fixed short path over all cups, cyclically, forever.
class StaticLoopStrategy final : public Strategy {
 public:
  std::optional<Point> target(const Simulation& sim) override;
  void on_arrival(Simulation& sim) override;
  std::string name() const override { return "static-loop"; }

 private:
  std::vector<Point> loop_;
  bool built_ = false;
  std::size_t idx_ = 0;
};

}  // namespace backlog
