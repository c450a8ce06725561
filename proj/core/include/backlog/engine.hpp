#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "backlog/allocation.hpp"
#include "backlog/few_tour.hpp"
#include "backlog/geometry.hpp"
#include "backlog/trace.hpp"

namespace backlog {

inline constexpr double kNoEvent = std::numeric_limits<double>::infinity();

// Compensated accumulator for the conservation bookkeeping.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Piecewise-constant pour record for one cup.
struct Deposit {
  double t_begin = 0.0;
  double t_end = 0.0;
  double rate = 0.0;
};

// Per-cup water bookkeeping.  Pouring is lazy: the currently flowing rate is
// kept as an open segment and materialized into a closed Deposit only when
// the rate changes.  Emptying a cup drops all of its closed deposits (their
// intervals are entirely in the past), which keeps memory proportional to
// the pour-rate changes since each cup's last visit.
class CupLedger {
 public:
  explicit CupLedger(int n_cups);

  int size() const { return static_cast<int>(cups_.size()); }

  // Changes the flow into `cup` from `now` on.
  void set_rate(int cup, double rate, double now);
  double open_rate(int cup) const { return cups_[cup].open_rate; }

  // Water in the cup at time `now` (now >= every prior event time).
  double level(int cup, double now) const;

  // Empties the cup: returns the removed amount, records the visit.
  double empty_cup(int cup, double now);

  // Water poured into `cup` during [t1, t2] that is still there at `now`.
  double water_in_window(int cup, double t1, double t2, double now) const;

  double last_emptied(int cup) const { return cups_[cup].last_emptied; }
  std::size_t deposit_count(int cup) const { return cups_[cup].closed.size(); }
  const std::vector<Deposit>& deposits(int cup) const {
    return cups_[cup].closed;
  }

 private:
  struct Cup {
    double last_emptied = 0.0;
    double open_rate = 0.0;
    double open_since = 0.0;
    // Sum of closed-deposit water newer than last_emptied; kept incrementally
    // so level() is O(1).
    double settled = 0.0;
    std::vector<Deposit> closed;
  };
  std::vector<Cup> cups_;
};

class Simulation;

// Pouring strategy for the continuous game.  Consulted at control epochs
// (every delta_adv) and after every cup emptying; must keep the rate sum
// within the unit budget.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual PourAllocation allocate(const Simulation& sim) = 0;
  // Static adversaries return the same allocation at every epoch; the engine
  // then skips per-epoch consultation.
  virtual bool is_static() const { return false; }
  virtual std::string name() const = 0;
};

// Player strategy.  The engine moves the player at unit speed toward
// target(); when the player reaches it, cups at that exact location are
// emptied and on_arrival fires.  next_epoch_time/on_epoch drive scheduled
// invocations; on_idle is polled after every event while no target is set.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual double next_epoch_time() const { return kNoEvent; }
  virtual void on_epoch(Simulation&) {}
  virtual std::optional<Point> target(const Simulation&) = 0;
  virtual void on_arrival(Simulation&) {}
  virtual void on_idle(Simulation&) {}
  // Level of the coroutine owning the current motion, -1 when none.
  virtual int active_level() const { return -1; }
  virtual std::string name() const = 0;
};

// Passive run-time checker.  Sees every trace event, may schedule
// evaluations at fixed times, and collects violation messages.
class Monitor {
 public:
  virtual ~Monitor() = default;
  virtual void on_event(const TraceEvent&, const Simulation&) {}
  virtual double next_check_time() const { return kNoEvent; }
  virtual void on_check(const Simulation&) {}
  virtual void on_finish(const Simulation&) {}

  const std::vector<std::string>& failures() const { return failures_; }

 protected:
  void fail(std::string message);

 private:
  std::vector<std::string> failures_;
};

// Continuous-time world: fixed cups in their bounding square, a unit-speed
// player, and the pour ledger.  All mutating calls advance or preserve the
// clock; time never flows backwards.
class Simulation {
 public:
  Simulation(PointSet cups, Point start, TraceSink* sink = nullptr);

  double clock() const { return clock_; }
  const Point& position() const { return position_; }
  const PointSet& cups() const { return cups_; }
  const Square& square() const { return square_; }
  double diameter() const { return diameter_; }
  int n() const { return cups_.size(); }

  // Replaces the pour rates from now on.  Rejects negative entries, unknown
  // cup ids, and rate sums above the unit budget.  Emits a pour event and
  // returns true only when the allocation actually changes.
  bool set_pour_rates(const PourAllocation& rates);

  // One-shot pour: the allocation flows for `duration` while the player
  // stands still, then pouring stops.
  void pour(const PourAllocation& rates, double duration);

  // Stationary passage of time under the current rates.
  void wait(double duration);

  // Traverses the whole polyline at unit speed, emptying cups at waypoints.
  // The plan must start at the current position.  Inside run_game the same
  // motion is interleaved with control epochs instead.
  void advance(const std::vector<Point>& plan);

  double level(int cup) const;
  double max_level() const;
  int fullest_cup() const;  // argmax level, ties by smallest id
  double water_in_window(int cup, double t1, double t2) const;
  double max_water_window(double t1, double t2) const;

  double total_poured() const { return poured_.value(); }
  double total_emptied() const { return emptied_.value(); }
  double total_in_cups() const;
  double rate_sum() const { return rate_sum_; }
  const std::vector<std::pair<int, double>>& current_rates() const {
    return current_rates_;
  }
  const CupLedger& ledger() const { return ledger_; }

  // Cup id whose location equals p exactly, -1 otherwise.
  int cup_at(const Point& p) const;

  // --- primitives used by run_game and strategies ---
  // Unit-speed motion toward `target` for `dt` time units; `arrives` snaps
  // the position exactly onto the target.
  void advance_toward(const Point& target, double dt, bool arrives);
  // Processes a waypoint visit at the current position (possibly emptying a
  // cup).  Returns true when a cup was emptied.
  bool visit_here();
  void emit(TraceEvent ev);
  void attach_monitor(Monitor* m) { monitors_.push_back(m); }
  const std::vector<Monitor*>& monitors() const { return monitors_; }

 private:
  void elapse(double dt);

  PointSet cups_;
  Square square_;
  double diameter_ = 0.0;
  double clock_ = 0.0;
  Point position_;
  CupLedger ledger_;
  TraceSink* sink_ = nullptr;
  std::vector<Monitor*> monitors_;

  std::vector<std::pair<int, double>> current_rates_;  // sparse, sorted by id
  double rate_sum_ = 0.0;
  KahanSum poured_;
  KahanSum emptied_;

  struct PointKey {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    bool operator==(const PointKey&) const = default;
  };
  struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const;
  };
  std::unordered_map<PointKey, int, PointKeyHash> cup_index_;
};

struct RunConfig {
  double horizon = 0.0;
  double delta_adv = 0.0;        // adversary control spacing
  double sample_interval = 0.0;  // backlog sampling spacing (0 = horizon only)
  double burn_in = 0.0;          // start of the steady-state window
};

struct RunReport {
  int n = 0;
  double d = 0.0;
  double horizon = 0.0;
  double max_backlog = 0.0;
  double max_backlog_post_burnin = 0.0;
  double total_poured = 0.0;
  double total_emptied = 0.0;
  double final_in_cups = 0.0;
  std::string adversary;
  std::string strategy;
  std::vector<std::string> violations;

  bool feasible() const { return violations.empty(); }
};

// Event-driven game loop.  Between events (adversary epochs, strategy
// epochs, waypoint arrivals, samples, monitor checks, horizon) rates and the
// player's velocity are constant.  Events at equal times are processed as:
// adversary epoch, strategy epochs (highest level pushed first, so the
// lowest level tours first), waypoint arrivals, sampling, monitor checks.
RunReport run_game(Simulation& sim, Strategy& strategy, Adversary& adversary,
                   const RunConfig& config);

}  // namespace backlog
