#include "backlog/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace backlog {

CupLedger::CupLedger(int n_cups) : cups_(n_cups) {
  if (n_cups < 1) throw std::invalid_argument("empty point set");
}

void CupLedger::set_rate(int cup, double rate, double now) {
  Cup& c = cups_[static_cast<std::size_t>(cup)];
  if (c.open_rate == rate) return;
  if (c.open_rate > 0.0 && now > c.open_since) {
    const double newer = now - std::max(c.open_since, c.last_emptied);
    if (newer > 0.0) c.settled += c.open_rate * newer;
    if (!c.closed.empty() && c.closed.back().t_end == c.open_since &&
        c.closed.back().rate == c.open_rate) {
      c.closed.back().t_end = now;
    } else {
      c.closed.push_back({c.open_since, now, c.open_rate});
    }
  }
  c.open_rate = rate;
  c.open_since = now;
}

double CupLedger::level(int cup, double now) const {
  const Cup& c = cups_[static_cast<std::size_t>(cup)];
  double lvl = c.settled;
  if (c.open_rate > 0.0) {
    const double newer = now - std::max(c.open_since, c.last_emptied);
    if (newer > 0.0) lvl += c.open_rate * newer;
  }
  return lvl;
}

double CupLedger::empty_cup(int cup, double now) {
  const double removed = level(cup, now);
  Cup& c = cups_[static_cast<std::size_t>(cup)];
  c.last_emptied = now;
  c.settled = 0.0;
  c.closed.clear();
  return removed;
}

double CupLedger::water_in_window(int cup, double t1, double t2,
                                  double now) const {
  const Cup& c = cups_[static_cast<std::size_t>(cup)];
  const double lo = std::max(t1, c.last_emptied);
  double water = 0.0;
  auto it = std::partition_point(
      c.closed.begin(), c.closed.end(),
      [lo](const Deposit& d) { return d.t_end <= lo; });
  for (; it != c.closed.end() && it->t_begin <= t2; ++it) {
    const double a = std::max({it->t_begin, t1, c.last_emptied});
    const double b = std::min({it->t_end, t2, now});
    if (b > a) water += it->rate * (b - a);
  }
  if (c.open_rate > 0.0) {
    const double a = std::max({c.open_since, t1, c.last_emptied});
    const double b = std::min(t2, now);
    if (b > a) water += c.open_rate * (b - a);
  }
  return water;
}

void Monitor::fail(std::string message) {
  if (failures_.size() < 100) {
    failures_.push_back(std::move(message));
  } else if (failures_.size() == 100) {
    failures_.push_back("(further failures suppressed)");
  }
}

std::size_t Simulation::PointKeyHash::operator()(const PointKey& k) const {
  std::uint64_t h = k.x * 0x9E3779B97F4A7C15ull;
  h ^= k.y + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
}

Simulation::Simulation(PointSet cups, Point start, TraceSink* sink)
    : cups_(std::move(cups)),
      square_(bounding_square(cups_)),
      diameter_(backlog::diameter(cups_)),
      position_(start),
      ledger_(cups_.size()),
      sink_(sink) {
  if (!square_.contains(start)) {
    throw std::invalid_argument("start outside square");
  }
  for (int i = 0; i < cups_.size(); ++i) {
    cup_index_.emplace(PointKey{std::bit_cast<std::uint64_t>(cups_[i].x),
                                std::bit_cast<std::uint64_t>(cups_[i].y)},
                       i);
  }
}

int Simulation::cup_at(const Point& p) const {
  const auto it = cup_index_.find(PointKey{std::bit_cast<std::uint64_t>(p.x),
                                           std::bit_cast<std::uint64_t>(p.y)});
  return it == cup_index_.end() ? -1 : it->second;
}

bool Simulation::set_pour_rates(const PourAllocation& rates) {
  std::vector<std::pair<int, double>> next;
  next.reserve(rates.amounts.size());
  double sum = 0.0;
  for (const auto& [id, rate] : rates.amounts) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      throw std::invalid_argument("negative pour");
    }
    if (id < 0 || id >= n()) throw std::invalid_argument("unknown cup id");
    if (rate > 0.0) {
      next.emplace_back(id, rate);
      sum += rate;
    }
  }
  if (sum > 1.0 + 1e-9) throw std::invalid_argument("rate budget exceeded");
  if (next == current_rates_) return false;

  // Stop the flow into cups leaving the support, then apply the new rates.
  std::size_t j = 0;
  for (const auto& [id, rate] : current_rates_) {
    while (j < next.size() && next[j].first < id) ++j;
    if (j >= next.size() || next[j].first != id) {
      ledger_.set_rate(id, 0.0, clock_);
    }
  }
  for (const auto& [id, rate] : next) ledger_.set_rate(id, rate, clock_);

  current_rates_ = std::move(next);
  rate_sum_ = sum;
  emit(TraceEvent{clock_, PourEvent{current_rates_}});
  return true;
}

void Simulation::pour(const PourAllocation& rates, double duration) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("pour duration must be positive");
  }
  set_pour_rates(rates);
  elapse(duration);
  set_pour_rates(PourAllocation{});
}

void Simulation::wait(double duration) {
  if (duration < 0.0) throw std::invalid_argument("negative wait duration");
  elapse(duration);
}

void Simulation::elapse(double dt) {
  if (dt == 0.0) return;
  poured_.add(rate_sum_ * dt);
  clock_ += dt;
}

void Simulation::advance_toward(const Point& target, double dt, bool arrives) {
  const Point from = position_;
  const double t0 = clock_;
  if (arrives) {
    position_ = target;
  } else if (dt > 0.0) {
    const double remaining = distance(position_, target);
    const double frac = remaining > 0.0 ? dt / remaining : 0.0;
    // Clamp: the interpolation may overshoot the square by an ulp, and
    // intermediate positions anchor tour plans that require containment.
    position_ = Point{
        std::clamp(position_.x + (target.x - position_.x) * frac,
                   square_.origin.x, square_.origin.x + square_.side),
        std::clamp(position_.y + (target.y - position_.y) * frac,
                   square_.origin.y, square_.origin.y + square_.side)};
  }
  elapse(dt);
  if (dt > 0.0) emit(TraceEvent{clock_, MoveEvent{t0, from, position_}});
}

bool Simulation::visit_here() {
  const int cup = cup_at(position_);
  if (cup < 0) return false;
  const double amount = ledger_.empty_cup(cup, clock_);
  emptied_.add(amount);
  emit(TraceEvent{clock_, EmptyEvent{cup, amount}});
  return true;
}

void Simulation::advance(const std::vector<Point>& plan) {
  if (plan.empty()) return;
  if (!(plan.front() == position_)) {
    throw std::runtime_error("plan not anchored at current position");
  }
  for (const Point& wp : plan) {
    const double dist = distance(position_, wp);
    advance_toward(wp, dist, true);
    visit_here();
  }
}

double Simulation::level(int cup) const {
  if (cup < 0 || cup >= n()) throw std::invalid_argument("unknown cup id");
  return ledger_.level(cup, clock_);
}

double Simulation::max_level() const {
  double m = 0.0;
  for (int i = 0; i < n(); ++i) m = std::max(m, ledger_.level(i, clock_));
  return m;
}

int Simulation::fullest_cup() const {
  int best = 0;
  double best_level = ledger_.level(0, clock_);
  for (int i = 1; i < n(); ++i) {
    const double l = ledger_.level(i, clock_);
    if (l > best_level) {
      best_level = l;
      best = i;
    }
  }
  return best;
}

double Simulation::water_in_window(int cup, double t1, double t2) const {
  if (cup < 0 || cup >= n()) throw std::invalid_argument("unknown cup id");
  if (!(t1 <= t2) || t2 > clock_) {
    throw std::invalid_argument("water_in_window: need t1 <= t2 <= clock");
  }
  return ledger_.water_in_window(cup, t1, t2, clock_);
}

double Simulation::max_water_window(double t1, double t2) const {
  if (!(t1 <= t2) || t2 > clock_) {
    throw std::invalid_argument("max_water_window: need t1 <= t2 <= clock");
  }
  double m = 0.0;
  for (int i = 0; i < n(); ++i) {
    m = std::max(m, ledger_.water_in_window(i, t1, t2, clock_));
  }
  return m;
}

double Simulation::total_in_cups() const {
  double s = 0.0;
  for (int i = 0; i < n(); ++i) s += ledger_.level(i, clock_);
  return s;
}

void Simulation::emit(TraceEvent ev) {
  if (sink_ != nullptr) sink_->on_event(ev);
  for (Monitor* m : monitors_) m->on_event(ev, *this);
}

RunReport run_game(Simulation& sim, Strategy& strategy, Adversary& adversary,
                   const RunConfig& config) {
  if (!(config.horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  RunReport report;
  report.n = sim.n();
  report.d = sim.diameter();
  report.horizon = config.horizon;
  report.adversary = adversary.name();
  report.strategy = strategy.name();

  // Single cup: the player starts on it and empties continuously; the
  // backlog is identically zero and no machinery is instantiated.
  if (sim.n() == 1) {
    sim.emit(TraceEvent{0.0, SampleEvent{0.0}});
    sim.emit(TraceEvent{config.horizon, SampleEvent{0.0}});
    for (Monitor* m : sim.monitors()) m->on_finish(sim);
    for (Monitor* m : sim.monitors()) {
      for (const auto& f : m->failures()) report.violations.push_back(f);
    }
    return report;
  }

  if (!(config.delta_adv > 0.0)) {
    throw std::invalid_argument("delta_adv must be positive");
  }

  const double horizon = config.horizon;
  const bool static_adv = adversary.is_static();
  double t = sim.clock();

  auto consult = [&] { return sim.set_pour_rates(adversary.allocate(sim)); };
  consult();

  double run_max = 0.0;
  double post_max = 0.0;
  auto eval_backlog = [&] {
    const double m = sim.max_level();
    run_max = std::max(run_max, m);
    if (sim.clock() >= config.burn_in) post_max = std::max(post_max, m);
    return m;
  };

  sim.emit(TraceEvent{t, SampleEvent{eval_backlog()}});
  double last_sample_t = t;

  long adv_tick = 1;
  double next_adv = static_adv ? kNoEvent : config.delta_adv;
  long sample_tick = 1;
  const double ds = config.sample_interval;
  double next_sample = ds > 0.0 ? ds : kNoEvent;

  auto poll_target = [&]() -> std::optional<Point> {
    auto tg = strategy.target(sim);
    if (!tg) {
      strategy.on_idle(sim);
      tg = strategy.target(sim);
    }
    return tg;
  };

  while (true) {
    const std::optional<Point> target = poll_target();
    const double t_arr =
        target ? t + distance(sim.position(), *target) : kNoEvent;
    double t_next = std::min(horizon, t_arr);
    t_next = std::min(t_next, next_adv);
    t_next = std::min(t_next, strategy.next_epoch_time());
    t_next = std::min(t_next, next_sample);
    for (Monitor* m : sim.monitors()) {
      t_next = std::min(t_next, m->next_check_time());
    }
    if (t_next < t) throw std::logic_error("event time moved backwards");

    const bool arrives = target.has_value() && t_next == t_arr;
    const double dt = t_next - t;
    if (target) {
      sim.advance_toward(*target, dt, arrives);
    } else if (dt > 0.0) {
      sim.wait(dt);
    }
    t = t_next;

    const bool at_horizon = t >= horizon;
    if (!at_horizon) {
      if (t == next_adv) {
        // Levels stay linear through a no-op consult, so the running max
        // only needs a reading when the rates actually change.
        if (consult()) eval_backlog();
        next_adv = config.delta_adv * static_cast<double>(++adv_tick);
      }
      if (strategy.next_epoch_time() == t) {
        strategy.on_epoch(sim);
        if (strategy.next_epoch_time() == t) {
          throw std::logic_error("strategy epoch did not advance");
        }
      }
      int chain = 0;
      while (true) {
        const std::optional<Point> tg = poll_target();
        if (!tg || !(sim.position() == *tg)) break;
        if (++chain > 4'000'000) {
          throw std::logic_error("plan stalled at a fixed point");
        }
        eval_backlog();
        const bool emptied = sim.visit_here();
        if (emptied && !static_adv) consult();
        strategy.on_arrival(sim);
      }
    }

    if (t == next_sample) {
      sim.emit(TraceEvent{t, SampleEvent{eval_backlog()}});
      last_sample_t = t;
      while (next_sample <= t) {
        next_sample = ds * static_cast<double>(++sample_tick);
      }
    }
    for (Monitor* m : sim.monitors()) {
      if (m->next_check_time() == t) m->on_check(sim);
    }

    if (at_horizon) break;
  }

  if (last_sample_t != horizon) {
    sim.emit(TraceEvent{horizon, SampleEvent{eval_backlog()}});
  }
  for (Monitor* m : sim.monitors()) m->on_finish(sim);

  report.max_backlog = run_max;
  report.max_backlog_post_burnin = post_max;
  report.total_poured = sim.total_poured();
  report.total_emptied = sim.total_emptied();
  report.final_in_cups = sim.total_in_cups();
  for (Monitor* m : sim.monitors()) {
    for (const auto& f : m->failures()) report.violations.push_back(f);
  }
  return report;
}

}  // namespace backlog
