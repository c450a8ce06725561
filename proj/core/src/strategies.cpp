#include "backlog/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace backlog {

namespace {

long long pow10ll(int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

ScheduleParams ScheduleParams::make(double d, double horizon) {
  ScheduleParams p;
  p.d = d;
  p.tau0 = 10.0 * d;
  if (!(p.tau0 > 0.0) || !(horizon > 0.0)) return p;
  while (p.n_levels < 18 && p.tau(p.n_levels) <= horizon) ++p.n_levels;
  return p;
}

long long ScheduleParams::k(int level) const {
  long long r = 1;
  constexpr long long kCap = 1ll << 60;
  for (int i = 0; i < level; ++i) {
    if (r > kCap / 25) return kCap;
    r *= 25;
  }
  return r;
}

double ScheduleParams::tau(int level) const {
  return static_cast<double>(pow10ll(level)) * tau0;
}

double ScheduleParams::epoch(int level, long long m) const {
  const long long scale = pow10ll(level);
  if (m > std::numeric_limits<long long>::max() / scale) return kNoEvent;
  return static_cast<double>(m * scale) * tau0;
}

double ScheduleParams::tour_budget(int level) const {
  return tau(level) * std::ldexp(1.0, -(level + 1));
}

double period_busy_budget(int level, const ScheduleParams& params) {
  return params.tau(level) * (1.0 - std::ldexp(1.0, -(level + 1)));
}

std::vector<Invocation> invocation_epochs(int level, double horizon,
                                          const ScheduleParams& params) {
  std::vector<Invocation> out;
  for (long long m = 1;; ++m) {
    const double t = params.epoch(level, m);
    if (!(t < horizon)) break;
    out.push_back(Invocation{level, m, (m - 1) / 10,
                             static_cast<int>((m - 1) % 10) + 1, t});
  }
  return out;
}

std::vector<int> select_cup_ids(const Simulation& sim, int level,
                                long long big_l,
                                const ScheduleParams& params) {
  const double start = params.epoch(level, 10 * big_l);
  const double now = sim.clock();
  const int n = sim.n();
  const int want = static_cast<int>(
      std::min<long long>(params.k(level), static_cast<long long>(n)));
  std::vector<std::pair<double, int>> scored;
  scored.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    scored.emplace_back(sim.water_in_window(c, start, now), c);
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  std::vector<int> ids(static_cast<std::size_t>(want));
  for (int i = 0; i < want; ++i) ids[static_cast<std::size_t>(i)] = scored[static_cast<std::size_t>(i)].second;
  return ids;
}

PointSet select_cups(const Simulation& sim, int level, long long big_l,
                     const ScheduleParams& params) {
  const auto ids = select_cup_ids(sim, level, big_l, params);
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(sim.cups()[id]);
  return PointSet(std::move(pts));
}

TimeDecomposition decompose_time(long long t) {
  if (t < 1) {
    throw std::invalid_argument("decompose_time: t must be at least 1");
  }
  TimeDecomposition d;
  d.t = t;
  long long rest = t;
  while (rest > 0) {
    int ell = static_cast<int>(rest % 10);
    if (ell == 0) ell = 10;
    rest = (rest - ell) / 10;
    d.digits.push_back(ell);
    d.partials.push_back(rest);
  }
  return d;
}

double backlog_bound(double d) {
  if (d < 0.0) throw std::invalid_argument("negative diameter");
  return 120.0 * d;
}

CoroutineStrategy::CoroutineStrategy(ScheduleParams params)
    : params_(params),
      next_tick_(static_cast<std::size_t>(params.n_levels), 1) {}

double CoroutineStrategy::next_epoch_time() const {
  double t = kNoEvent;
  for (int i = 0; i < params_.n_levels; ++i) {
    t = std::min(t, params_.epoch(i, next_tick_[static_cast<std::size_t>(i)]));
  }
  return t;
}

void CoroutineStrategy::on_epoch(Simulation& sim) {
  const double t = sim.clock();
  // Fire due levels highest first so the lowest lands on top of the stack.
  for (int i = params_.n_levels - 1; i >= 0; --i) {
    const long long m = next_tick_[static_cast<std::size_t>(i)];
    if (params_.epoch(i, m) != t) continue;
    for (const Frame& f : stack_) {
      if (f.level == i) {
        throw std::logic_error("level invoked while its frame is live");
      }
    }
    const long long big_l = (m - 1) / 10;
    const int ell = static_cast<int>((m - 1) % 10) + 1;
    const auto ids = select_cup_ids(sim, i, big_l, params_);
    std::vector<Point> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(sim.cups()[id]);
    Tour tour = closed_tour(sim.position(), PointSet(std::move(pts)),
                            sim.square());
    const double budget = params_.tour_budget(i);
    if (tour.length > budget * (1.0 + 1e-9) + 1e-12) {
      throw std::runtime_error("tour budget violated");
    }
    sim.emit(TraceEvent{
        t, InvokeEvent{i, static_cast<long>(big_l), ell, tour.length, budget,
                       ids}});
    stack_.push_back(Frame{i, big_l, ell, std::move(tour.waypoints), 0});
    ++next_tick_[static_cast<std::size_t>(i)];
  }
}

std::optional<Point> CoroutineStrategy::target(const Simulation&) {
  if (stack_.empty()) return std::nullopt;
  const Frame& f = stack_.back();
  return f.tour[f.next_wp];
}

void CoroutineStrategy::on_arrival(Simulation& sim) {
  if (stack_.empty()) return;
  Frame& f = stack_.back();
  ++f.next_wp;
  if (f.next_wp < f.tour.size()) return;
  sim.emit(TraceEvent{sim.clock(), ReturnEvent{f.level}});
  stack_.pop_back();
  if (!stack_.empty()) {
    sim.emit(TraceEvent{sim.clock(), ResumeEvent{stack_.back().level}});
  }
}

int CoroutineStrategy::active_level() const {
  return stack_.empty() ? -1 : stack_.back().level;
}

std::optional<Point> GreedyStrategy::target(const Simulation&) {
  return target_;
}

void GreedyStrategy::on_arrival(Simulation& sim) { replan(sim); }

void GreedyStrategy::on_idle(Simulation& sim) { replan(sim); }

void GreedyStrategy::replan(const Simulation& sim) {
  const int c = sim.fullest_cup();
  const Point& p = sim.cups()[c];
  // Standing on the fullest cup while it is dry: stay put, or the plan
  // would chase a zero-length hop forever.
  if (p == sim.position() && sim.level(c) <= 0.0) {
    target_.reset();
  } else {
    target_ = p;
  }
}

std::optional<Point> StaticLoopStrategy::target(const Simulation& sim) {
  if (!built_) {
    loop_ = few_path(sim.cups(), sim.square()).waypoints;
    built_ = true;
  }
  if (loop_.size() < 2) return std::nullopt;
  return loop_[idx_];
}

void StaticLoopStrategy::on_arrival(Simulation&) {
  if (loop_.size() >= 2) idx_ = (idx_ + 1) % loop_.size();
}

}  // namespace backlog
