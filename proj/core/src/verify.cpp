#include "backlog/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "backlog/adversaries.hpp"
#include "backlog/few_tour.hpp"
#include "backlog/rng.hpp"
#include "backlog/scenario.hpp"
#include "backlog/tauk_game.hpp"

namespace backlog {

namespace {

long long pow10ll(int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

std::string fmt(double v) { return format_csv_double(v); }

std::vector<Point> random_points_in_square(std::mt19937_64& gen, int n,
                                           double side) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(pts.size()) < n) {
    const Point p{uniform01(gen) * side, uniform01(gen) * side};
    bool dup = false;
    for (const Point& q : pts) {
      if (q == p) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  return pts;
}

void append_labeled(std::vector<std::string>& out, const std::string& label,
                    const std::vector<std::string>& msgs) {
  for (const auto& m : msgs) out.push_back(label + ": " + m);
}

std::string summarize(const std::vector<std::string>& failures,
                      const std::string& ok_details) {
  if (failures.empty()) return ok_details;
  std::ostringstream os;
  os << failures.size() << " failure(s)";
  const std::size_t show = std::min<std::size_t>(failures.size(), 4);
  for (std::size_t i = 0; i < show; ++i) os << "; " << failures[i];
  if (failures.size() > show) os << "; ...";
  return os.str();
}

}  // namespace

void WaterCapMonitor::on_event(const TraceEvent& ev, const Simulation&) {
  const auto* inv = std::get_if<InvokeEvent>(&ev.data);
  if (inv == nullptr) return;
  const long long m = 10 * static_cast<long long>(inv->L) + inv->ell;
  pending_.emplace(params_.epoch(inv->level, m + 1),
                   Pending{inv->level, inv->L, inv->ell});
}

double WaterCapMonitor::next_check_time() const {
  return pending_.empty() ? kNoEvent : pending_.begin()->first;
}

void WaterCapMonitor::on_check(const Simulation& sim) {
  const double now = sim.clock();
  while (!pending_.empty() && pending_.begin()->first == now) {
    const Pending p = pending_.begin()->second;
    pending_.erase(pending_.begin());
    const double t1 = params_.epoch(p.level, 10 * p.big_l);
    const double t2 = params_.epoch(p.level, 10 * p.big_l + p.ell);
    const double w = sim.max_water_window(t1, t2);
    const double limit =
        3.0 * params_.tau(p.level) / static_cast<double>(params_.k(p.level));
    if (!(w < limit)) {
      fail("water cap: invocation (" + std::to_string(p.level) + ", " +
           std::to_string(p.big_l) + ", " + std::to_string(p.ell) +
           ") left " + fmt(w) + " >= " + fmt(limit) + " at t=" + fmt(now));
    }
  }
}

BusyMonitor::BusyMonitor(ScheduleParams params)
    : params_(params),
      live_(static_cast<std::size_t>(params.n_levels), false),
      fine_busy_(static_cast<std::size_t>(params.n_levels)) {}

void BusyMonitor::on_event(const TraceEvent& ev, const Simulation&) {
  if (const auto* inv = std::get_if<InvokeEvent>(&ev.data)) {
    const auto lvl = static_cast<std::size_t>(inv->level);
    if (lvl < live_.size()) {
      if (live_[lvl]) {
        fail("schedule: level " + std::to_string(inv->level) +
             " reinvoked before returning, t=" + fmt(ev.t));
      }
      live_[lvl] = true;
    }
    if (!shadow_stack_.empty() && shadow_stack_.back() <= inv->level) {
      fail("schedule: invocation of level " + std::to_string(inv->level) +
           " does not preempt a higher level, t=" + fmt(ev.t));
    }
    shadow_stack_.push_back(inv->level);
  } else if (const auto* ret = std::get_if<ReturnEvent>(&ev.data)) {
    if (shadow_stack_.empty() || shadow_stack_.back() != ret->level) {
      fail("schedule: return from level " + std::to_string(ret->level) +
           " does not match the active frame, t=" + fmt(ev.t));
    } else {
      shadow_stack_.pop_back();
    }
    const auto lvl = static_cast<std::size_t>(ret->level);
    if (lvl < live_.size()) live_[lvl] = false;
  } else if (const auto* res = std::get_if<ResumeEvent>(&ev.data)) {
    if (shadow_stack_.empty() || shadow_stack_.back() != res->level) {
      fail("schedule: resumed level " + std::to_string(res->level) +
           " is not the active frame, t=" + fmt(ev.t));
    }
  } else if (const auto* mv = std::get_if<MoveEvent>(&ev.data)) {
    if (shadow_stack_.empty()) return;
    const int h = shadow_stack_.back();
    if (h < 0 || h >= params_.n_levels) return;
    long long j0 = static_cast<long long>(std::floor(mv->t_begin / params_.tau0));
    while (params_.epoch(0, j0 + 1) <= mv->t_begin) ++j0;
    while (j0 > 0 && params_.epoch(0, j0) > mv->t_begin) --j0;
    fine_busy_[static_cast<std::size_t>(h)][j0] += ev.t - mv->t_begin;
  }
}

void BusyMonitor::on_finish(const Simulation&) {
  for (int i = 0; i < params_.n_levels; ++i) {
    const long long scale = pow10ll(i);
    std::map<long long, double> busy;
    for (int h = 0; h <= i; ++h) {
      for (const auto& [j0, dur] : fine_busy_[static_cast<std::size_t>(h)]) {
        busy[j0 / scale] += dur;
      }
    }
    const double budget = period_busy_budget(i, params_);
    for (const auto& [j, dur] : busy) {
      if (dur > budget + 1e-9) {
        fail("schedule: levels <= " + std::to_string(i) + " busy " +
             fmt(dur) + " > " + fmt(budget) + " in period " +
             std::to_string(j));
      }
    }
  }
}

void DecompositionMonitor::on_event(const TraceEvent& ev,
                                    const Simulation& sim) {
  const auto* s = std::get_if<SampleEvent>(&ev.data);
  if (s == nullptr) return;
  if (params_.n_levels == 0 || !(params_.tau0 > 0.0)) return;
  const double t = ev.t;
  long long big_t = static_cast<long long>(std::floor(t / params_.tau0));
  while (params_.epoch(0, big_t + 1) <= t) ++big_t;
  while (big_t > 0 && params_.epoch(0, big_t) > t) --big_t;
  if (big_t < 1) return;

  const TimeDecomposition dec = decompose_time(big_t);
  double cap_sum = 0.0;
  double window_sum = 0.0;
  for (std::size_t i = 0; i < dec.digits.size(); ++i) {
    const int level = static_cast<int>(i);
    const long long li = dec.partials[i];
    const long long ell = dec.digits[i];
    const double a = params_.epoch(level, 10 * li);
    const double b = params_.epoch(level, 10 * li + ell - 1);
    const double c = params_.epoch(level, 10 * li + ell);
    const double w_long = sim.max_water_window(a, b);
    const double w_short = sim.max_water_window(b, c);
    const double cap_long =
        3.0 * params_.tau(level) / static_cast<double>(params_.k(level));
    const double cap_short =
        level >= 1 ? 3.0 * params_.tau(level - 1) /
                         static_cast<double>(params_.k(level - 1))
                   : params_.tau0;
    if (w_long > cap_long + 1e-9) {
      fail("decomposition: level " + std::to_string(level) +
           " long window holds " + fmt(w_long) + " > " + fmt(cap_long) +
           " at t=" + fmt(t));
    }
    if (w_short > cap_short + 1e-9) {
      fail("decomposition: level " + std::to_string(level) +
           " short window holds " + fmt(w_short) + " > " + fmt(cap_short) +
           " at t=" + fmt(t));
    }
    cap_sum += cap_long + cap_short;
    window_sum += w_long + w_short;
  }
  const double t_whole = params_.epoch(0, big_t);
  const double w_rem = sim.max_water_window(t_whole, t);
  if (w_rem > (t - t_whole) + 1e-9) {
    fail("decomposition: remainder window holds " + fmt(w_rem) +
         " from only " + fmt(t - t_whole) + " time units at t=" + fmt(t));
  }
  cap_sum += params_.tau0;
  window_sum += w_rem;
  if (cap_sum > backlog_bound(params_.d) + 1e-9) {
    fail("decomposition: caps sum to " + fmt(cap_sum) + " > " +
         fmt(backlog_bound(params_.d)) + " at t=" + fmt(t));
  }
  if (s->backlog > window_sum + 1e-9) {
    fail("decomposition: backlog " + fmt(s->backlog) +
         " exceeds window sum " + fmt(window_sum) + " at t=" + fmt(t));
  }
}

WPropertyMonitor::WPropertyMonitor(std::uint64_t seed, int n_checks,
                                   double horizon)
    : gen_(seed) {
  checks_.reserve(static_cast<std::size_t>(n_checks));
  for (int i = 0; i < n_checks; ++i) {
    const double t = uniform01(gen_) * horizon;
    if (t > 0.0) checks_.push_back(t);
  }
  std::sort(checks_.begin(), checks_.end());
  checks_.erase(std::unique(checks_.begin(), checks_.end()), checks_.end());
}

double WPropertyMonitor::next_check_time() const {
  return idx_ < checks_.size() ? checks_[idx_] : kNoEvent;
}

void WPropertyMonitor::on_check(const Simulation& sim) {
  const double t = sim.clock();
  while (idx_ < checks_.size() && checks_[idx_] <= t) ++idx_;

  for (StoredWindow& w : stored_) {
    const double v = sim.max_water_window(w.t1, w.t2);
    if (v > w.last_value + 1e-9) {
      fail("w-monotonicity: window [" + fmt(w.t1) + ", " + fmt(w.t2) +
           "] grew from " + fmt(w.last_value) + " to " + fmt(v) +
           " at t=" + fmt(t));
    }
    w.last_value = std::min(w.last_value, v);
  }

  const double t1 = uniform01(gen_) * t;
  const double t2 = std::min(t, t1 + uniform01(gen_) * (t - t1));
  const double tm = std::min(t2, t1 + uniform01(gen_) * (t2 - t1));
  for (int c = 0; c < sim.n(); ++c) {
    const double whole = sim.water_in_window(c, t1, t2);
    const double parts =
        sim.water_in_window(c, t1, tm) + sim.water_in_window(c, tm, t2);
    if (std::abs(whole - parts) > 1e-9) {
      fail("w-additivity: cup " + std::to_string(c) + " window [" + fmt(t1) +
           ", " + fmt(t2) + "] split at " + fmt(tm) + " gives " + fmt(parts) +
           " vs " + fmt(whole) + " at t=" + fmt(t));
    }
  }
  const double whole = sim.max_water_window(t1, t2);
  if (whole >
      sim.max_water_window(t1, tm) + sim.max_water_window(tm, t2) + 1e-9) {
    fail("w-subadditivity: window [" + fmt(t1) + ", " + fmt(t2) +
         "] exceeds its split at " + fmt(tm) + ", t=" + fmt(t));
  }
  stored_.push_back(StoredWindow{t1, t2, whole});
}

void ConservationMonitor::on_finish(const Simulation& sim) {
  const double drift =
      sim.total_in_cups() + sim.total_emptied() - sim.total_poured();
  if (std::abs(drift) > 1e-6) {
    fail("conservation: cups + emptied - poured = " + fmt(drift));
  }
  if (sim.total_poured() > sim.clock() + 1e-6) {
    fail("conservation: poured " + fmt(sim.total_poured()) +
         " over only " + fmt(sim.clock()) + " time units");
  }
}

std::vector<std::string> replay_trace_check(
    const PointSet& cups, const Point& start,
    const std::vector<TraceEvent>& events) {
  std::vector<std::string> problems;
  auto report = [&problems](std::string msg) {
    if (problems.size() < 50) problems.push_back(std::move(msg));
  };
  const int n = cups.size();
  std::vector<double> levels(static_cast<std::size_t>(n), 0.0);
  std::vector<double> rates(static_cast<std::size_t>(n), 0.0);
  double last_t = 0.0;
  Point pos = start;

  auto advance_to = [&](double t) {
    if (t < last_t) {
      report("events out of order at t=" + fmt(t));
      return;
    }
    const double dt = t - last_t;
    if (dt > 0.0) {
      for (int c = 0; c < n; ++c) {
        levels[static_cast<std::size_t>(c)] +=
            rates[static_cast<std::size_t>(c)] * dt;
      }
    }
    last_t = t;
  };

  for (const TraceEvent& ev : events) {
    advance_to(ev.t);
    if (const auto* p = std::get_if<PourEvent>(&ev.data)) {
      std::fill(rates.begin(), rates.end(), 0.0);
      double sum = 0.0;
      for (const auto& [id, r] : p->rates) {
        if (id < 0 || id >= n) {
          report("pour into unknown cup at t=" + fmt(ev.t));
          continue;
        }
        rates[static_cast<std::size_t>(id)] = r;
        sum += r;
      }
      if (sum > 1.0 + 1e-9) report("pour rates exceed 1 at t=" + fmt(ev.t));
    } else if (const auto* mv = std::get_if<MoveEvent>(&ev.data)) {
      if (!(mv->from == pos)) {
        report("move does not start at the player position, t=" + fmt(ev.t));
      }
      const double len = distance(mv->from, mv->to);
      if (std::abs(len - (ev.t - mv->t_begin)) > 1e-9) {
        report("move segment is not unit speed at t=" + fmt(ev.t));
      }
      pos = mv->to;
    } else if (const auto* em = std::get_if<EmptyEvent>(&ev.data)) {
      if (em->cup < 0 || em->cup >= n) {
        report("empty of unknown cup at t=" + fmt(ev.t));
        continue;
      }
      if (!(cups[em->cup] == pos)) {
        report("cup " + std::to_string(em->cup) +
               " emptied away from the player, t=" + fmt(ev.t));
      }
      const double have = levels[static_cast<std::size_t>(em->cup)];
      if (std::abs(have - em->amount) > 1e-9) {
        report("empty amount " + fmt(em->amount) + " vs replayed " +
               fmt(have) + " at t=" + fmt(ev.t));
      }
      levels[static_cast<std::size_t>(em->cup)] = 0.0;
    } else if (const auto* s = std::get_if<SampleEvent>(&ev.data)) {
      const double m = *std::max_element(levels.begin(), levels.end());
      if (std::abs(m - s->backlog) > 1e-9) {
        report("sampled backlog " + fmt(s->backlog) + " vs replayed " +
               fmt(m) + " at t=" + fmt(ev.t));
      }
    }
  }
  return problems;
}

PointSet make_unit_diameter_cups(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("unit-diameter set needs n >= 2");
  std::vector<Point> pts = {Point{0.0, 0.0}, Point{1.0, 0.0}};
  std::mt19937_64 gen(seed);
  while (static_cast<int>(pts.size()) < n) {
    const double x = uniform01(gen);
    const double y = uniform01(gen) - 0.5;
    const double dx = x - 0.5;
    // Strictly inside the disk spanned by the endpoints, with margin, so
    // the endpoint pair stays the unique diameter and it is exactly 1.
    if (dx * dx + y * y >= 0.2499) continue;
    const Point p{x, y};
    bool dup = false;
    for (const Point& q : pts) {
      if (q == p) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

CriterionResult criterion_tauk_bound() {
  CriterionResult res{1, "tauk-bound", false, ""};
  const double taus[] = {0.5, 1.0, 10.0};
  const int ks[] = {1, 2, 5, 25};
  const int r = 50;
  long games = 0;
  std::vector<std::string> failures;
  for (const double tau : taus) {
    for (const int k : ks) {
      std::vector<std::pair<std::string, TaukAdversary>> advs;
      advs.emplace_back("equalizing", make_equalizing_adversary(r, k, tau));
      advs.emplace_back("single-cup", make_single_cup_adversary(tau));
      advs.emplace_back("uniform-spread", make_spread_uniform_adversary(k, tau));
      for (unsigned long long s = 1; s <= 100; ++s) {
        advs.emplace_back("random-" + std::to_string(s),
                          make_random_tauk_adversary(s, r, k, tau));
      }
      const double bound = lemma2_bound(r, tau, k) + 1e-9;
      for (const auto& [name, adv] : advs) {
        const TaukTrace trace = run_tauk(r, tau, k, adv);
        ++games;
        for (const TaukRound& round : trace.rounds) {
          if (round.max_level > bound && failures.size() < 16) {
            failures.push_back("tau=" + fmt(tau) + " k=" + std::to_string(k) +
                               " " + name + " round " +
                               std::to_string(round.round) + ": " +
                               fmt(round.max_level) + " > " + fmt(bound));
          }
        }
      }
    }
  }
  res.passed = failures.empty();
  res.details = summarize(
      failures, std::to_string(games) + " games of " + std::to_string(r) +
                    " rounds within H_r*tau/k");
  return res;
}

CriterionResult criterion_tauk_tightness() {
  CriterionResult res{2, "tauk-tightness", false, ""};
  const double taus[] = {0.5, 1.0, 10.0};
  const int ks[] = {1, 2, 5, 25};
  const int rs[] = {1, 2, 3, 5, 10, 25, 50};
  long games = 0;
  std::vector<std::string> failures;
  for (const double tau : taus) {
    for (const int k : ks) {
      for (const int r : rs) {
        const TaukTrace trace =
            run_tauk(r, tau, k, make_equalizing_adversary(r, k, tau));
        ++games;
        double oracle = 0.0;
        for (int j = 1; j <= r; ++j) {
          oracle += tau / static_cast<double>(j * k + 1);
        }
        const double got = trace.rounds.back().max_level;
        if (std::abs(got - oracle) > 1e-9 && failures.size() < 16) {
          failures.push_back("tau=" + fmt(tau) + " k=" + std::to_string(k) +
                             " r=" + std::to_string(r) + ": " + fmt(got) +
                             " vs " + fmt(oracle));
        }
      }
    }
  }
  res.passed = failures.empty();
  res.details = summarize(failures, std::to_string(games) +
                                        " equalizing games match the "
                                        "closed form");
  return res;
}

CriterionResult criterion_few_path_bound() {
  CriterionResult res{3, "few-path-bound", false, ""};
  std::mt19937_64 gen(101);
  const Square sq{Point{0.0, 0.0}, 1.0};
  std::vector<std::string> failures;
  double worst_margin = 1e300;
  for (int inst = 0; inst < 1000; ++inst) {
    const int n = 1 + static_cast<int>(uniform_below(gen, 500));
    const PointSet ps(random_points_in_square(gen, n, 1.0));
    const Path path = few_path(ps, sq);
    const double bound = few_path_bound(n, 1.0);
    worst_margin = std::min(worst_margin, bound - path.length);
    if (!(path.length <= bound) && failures.size() < 16) {
      failures.push_back("instance " + std::to_string(inst) + " n=" +
                         std::to_string(n) + ": " + fmt(path.length) + " > " +
                         fmt(bound));
    }
  }
  res.passed = failures.empty();
  res.details = summarize(
      failures, "1000 instances; smallest slack " + fmt(worst_margin));
  return res;
}

CriterionResult criterion_closed_tour_bound() {
  CriterionResult res{4, "closed-tour-bound", false, ""};
  std::mt19937_64 gen(202);
  const Square sq{Point{0.0, 0.0}, 1.0};
  std::vector<std::string> failures;
  long tours = 0;
  for (int i = 0; i <= 2; ++i) {
    int q_size = 1;
    for (int e = 0; e < i; ++e) q_size *= 25;
    for (int inst = 0; inst < 100; ++inst) {
      const Point p{uniform01(gen), uniform01(gen)};
      const PointSet qs(random_points_in_square(gen, q_size, 1.0));
      const Tour tour = closed_tour(p, qs, sq);
      ++tours;
      const double bound = closed_tour_bound(i, 1.0);
      if (!(tour.length <= bound) && failures.size() < 16) {
        failures.push_back("i=" + std::to_string(i) + " instance " +
                           std::to_string(inst) + ": " + fmt(tour.length) +
                           " > " + fmt(bound));
      }
    }
  }
  res.passed = failures.empty();
  res.details =
      summarize(failures, std::to_string(tours) + " tours within 5^(i+1)");
  return res;
}

namespace {

struct ScheduleSuiteOutcome {
  long runs = 0;
  std::vector<std::string> busy_failures;
  std::vector<std::string> water_cap_failures;
  std::vector<std::string> decomp_failures;
  std::vector<std::string> other_failures;
};

ScheduleSuiteOutcome run_schedule_suite() {
  ScheduleSuiteOutcome out;
  const int ns[] = {2, 10, 50, 200};
  const double horizon = 3000.0;
  for (const int n : ns) {
    const PointSet cups = make_unit_diameter_cups(n, 500 + static_cast<std::uint64_t>(n));
    for (std::size_t a = 0; a < adversary_names().size(); ++a) {
      const std::string& adv_name = adversary_names()[a];
      const std::string label = "n=" + std::to_string(n) + "/" + adv_name;
      try {
        Simulation sim(cups, Point{0.0, 0.0}, nullptr);
        const ScheduleParams params =
            ScheduleParams::make(sim.diameter(), horizon);
        CoroutineStrategy strategy(params);
        const auto adversary = make_adversary(
            *adversary_kind_from_name(adv_name),
            9000 + static_cast<std::uint64_t>(n) * 10 + a);
        WaterCapMonitor water_cap(params);
        BusyMonitor busy(params);
        DecompositionMonitor decomp(params);
        ConservationMonitor cons;
        sim.attach_monitor(&water_cap);
        sim.attach_monitor(&busy);
        sim.attach_monitor(&decomp);
        sim.attach_monitor(&cons);
        RunConfig cfg;
        cfg.horizon = horizon;
        cfg.delta_adv = 0.1;
        cfg.sample_interval = 7.5;
        cfg.burn_in = 0.0;
        run_game(sim, strategy, *adversary, cfg);
        ++out.runs;
        append_labeled(out.busy_failures, label, busy.failures());
        append_labeled(out.water_cap_failures, label, water_cap.failures());
        append_labeled(out.decomp_failures, label, decomp.failures());
        append_labeled(out.other_failures, label, cons.failures());
      } catch (const std::exception& e) {
        out.other_failures.push_back(label + ": exception: " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

CriterionResult criterion_schedule_feasibility() {
  CriterionResult res{5, "schedule-feasibility", false, ""};
  const ScheduleSuiteOutcome out = run_schedule_suite();
  std::vector<std::string> failures = out.busy_failures;
  failures.insert(failures.end(), out.other_failures.begin(),
                  out.other_failures.end());
  res.passed = failures.empty();
  res.details = summarize(
      failures, std::to_string(out.runs) +
                    " runs: every invocation returned in time, busy "
                    "budgets held");
  return res;
}

CriterionResult criterion_water_caps() {
  CriterionResult res{6, "invocation-water-cap", false, ""};
  const ScheduleSuiteOutcome out = run_schedule_suite();
  std::vector<std::string> failures = out.water_cap_failures;
  failures.insert(failures.end(), out.decomp_failures.begin(),
                  out.decomp_failures.end());
  failures.insert(failures.end(), out.other_failures.begin(),
                  out.other_failures.end());
  res.passed = failures.empty();
  res.details = summarize(
      failures, std::to_string(out.runs) +
                    " runs: per-invocation water caps and window "
                    "decomposition held");
  return res;
}

CriterionResult criterion_backlog_120d(std::ostream* progress) {
  CriterionResult res{7, "backlog-120d", false, ""};
  const int ns[] = {2, 10, 50, 200};
  const double deltas[] = {0.1, 0.01};
  const double horizon = 1e5;
  long runs = 0;
  double worst_ratio = 0.0;
  std::vector<std::string> failures;
  for (const int n : ns) {
    const PointSet cups =
        make_unit_diameter_cups(n, 700 + static_cast<std::uint64_t>(n));
    for (std::size_t a = 0; a < adversary_names().size(); ++a) {
      const std::string& adv_name = adversary_names()[a];
      for (std::size_t di = 0; di < 2; ++di) {
        const double delta = deltas[di];
        const std::string label = "n=" + std::to_string(n) + "/" + adv_name +
                                  "/delta=" + fmt(delta);
        try {
          Simulation sim(cups, Point{0.0, 0.0}, nullptr);
          CoroutineStrategy strategy(
              ScheduleParams::make(sim.diameter(), horizon));
          const auto adversary = make_adversary(
              *adversary_kind_from_name(adv_name),
              810000 + static_cast<std::uint64_t>(n) * 100 + a * 10 + di);
          ConservationMonitor cons;
          sim.attach_monitor(&cons);
          RunConfig cfg;
          cfg.horizon = horizon;
          cfg.delta_adv = delta;
          cfg.sample_interval = 0.0;
          cfg.burn_in = 0.0;
          const RunReport rep = run_game(sim, strategy, *adversary, cfg);
          ++runs;
          const double bound = backlog_bound(sim.diameter());
          worst_ratio = std::max(worst_ratio, rep.max_backlog / bound);
          if (!(rep.max_backlog <= bound) && failures.size() < 16) {
            failures.push_back(label + ": max backlog " +
                               fmt(rep.max_backlog) + " > " + fmt(bound));
          }
          for (const auto& v : rep.violations) {
            if (failures.size() < 16) failures.push_back(label + ": " + v);
          }
          if (progress != nullptr) {
            *progress << "    " << label << ": max backlog "
                      << fmt(rep.max_backlog) << std::endl;
          }
        } catch (const std::exception& e) {
          failures.push_back(label + ": exception: " + e.what());
        }
      }
    }
  }
  res.passed = failures.empty();
  res.details = summarize(
      failures, std::to_string(runs) + " runs under 120*D; worst ratio " +
                    fmt(worst_ratio));
  return res;
}

CriterionResult criterion_two_cup_lower() {
  CriterionResult res{8, "two-cup-lower", false, ""};
  std::vector<std::string> failures;
  try {
    const PointSet cups({Point{0.0, 0.0}, Point{1.0, 0.0}});
    const Square sq = bounding_square(cups);
    const Point center{sq.origin.x + sq.side / 2.0,
                       sq.origin.y + sq.side / 2.0};
    Simulation sim(cups, center, nullptr);
    GreedyStrategy strategy;
    DiameterEndpointsAdversary adversary;
    ConservationMonitor cons;
    sim.attach_monitor(&cons);
    RunConfig cfg;
    cfg.horizon = 200.0;
    cfg.delta_adv = 0.1;
    cfg.sample_interval = 0.5;
    cfg.burn_in = 20.0;
    const RunReport rep = run_game(sim, strategy, adversary, cfg);
    append_labeled(failures, "two-cup", cons.failures());
    const double steady = rep.max_backlog_post_burnin;
    if (!(steady >= 0.9 && steady <= 1.1)) {
      failures.push_back("steady-state max backlog " + fmt(steady) +
                         " outside [0.9, 1.1]");
    }
    res.details = summarize(
        failures, "steady-state max backlog " + fmt(steady) +
                      " within [0.9*D, 1.1*D]");
  } catch (const std::exception& e) {
    failures.push_back(std::string("exception: ") + e.what());
    res.details = summarize(failures, "");
  }
  res.passed = failures.empty();
  return res;
}

CriterionResult criterion_w_calculus() {
  CriterionResult res{9, "w-calculus", false, ""};
  std::vector<std::string> failures;
  long runs = 0;
  const char* strategies[] = {"coroutine", "greedy", "static-loop"};
  for (int s = 1; s <= 100; ++s) {
    const int n = 2 + (s % 11);
    const std::string strat = strategies[s % 3];
    const AdversaryKind kind = static_cast<AdversaryKind>(s % 5);
    const std::string label = "trace " + std::to_string(s) + " (" + strat +
                              "/" + adversary_name(kind) + ")";
    try {
      std::mt19937_64 gen(1000 + static_cast<std::uint64_t>(s));
      const PointSet cups(random_points_in_square(gen, n, 1.0));
      const Square sq = bounding_square(cups);
      Simulation sim(cups,
                     Point{sq.origin.x + sq.side / 2.0,
                           sq.origin.y + sq.side / 2.0},
                     nullptr);
      const double horizon = 50.0;
      const auto strategy = make_strategy(strat, sim.diameter(), horizon);
      const auto adversary =
          make_adversary(kind, 2000 + static_cast<std::uint64_t>(s));
      WPropertyMonitor wprop(3000 + static_cast<std::uint64_t>(s), 40,
                             horizon);
      ConservationMonitor cons;
      sim.attach_monitor(&wprop);
      sim.attach_monitor(&cons);
      RunConfig cfg;
      cfg.horizon = horizon;
      cfg.delta_adv = 0.2;
      cfg.sample_interval = 0.0;
      cfg.burn_in = 0.0;
      run_game(sim, *strategy, *adversary, cfg);
      ++runs;
      append_labeled(failures, label, wprop.failures());
      append_labeled(failures, label, cons.failures());
    } catch (const std::exception& e) {
      failures.push_back(label + ": exception: " + e.what());
    }
  }
  res.passed = failures.empty();
  res.details = summarize(
      failures, std::to_string(runs) +
                    " traces: monotonicity and split additivity held");
  return res;
}

CriterionResult criterion_decompose_time() {
  CriterionResult res{10, "decompose-time", false, ""};
  std::vector<std::string> failures;
  for (long long t = 1; t <= 1000000; ++t) {
    const TimeDecomposition dec = decompose_time(t);
    long long sum = 0;
    long long scale = 1;
    bool ok = !dec.digits.empty() && dec.partials.back() == 0;
    for (std::size_t i = 0; i < dec.digits.size(); ++i) {
      const int d = dec.digits[i];
      if (d < 1 || d > 10) ok = false;
      if (i > 0 && dec.partials[i - 1] != 10 * dec.partials[i] + d) ok = false;
      sum += scale * d;
      scale *= 10;
    }
    if (!ok || sum != t) {
      if (failures.size() < 16) {
        failures.push_back("t=" + std::to_string(t) + " reassembles to " +
                           std::to_string(sum));
      }
    }
  }
  if (backlog_bound(1.0) != 120.0) {
    failures.push_back("backlog_bound(1) = " + fmt(backlog_bound(1.0)));
  }
  res.passed = failures.empty();
  res.details = summarize(
      failures, "all T in 1..10^6 reassemble; backlog_bound(1) = 120");
  return res;
}

std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress) {
  std::vector<CriterionResult> results;
  const auto push = [&](CriterionResult r) {
    if (progress != nullptr) {
      *progress << "criterion " << r.id << " (" << r.name << "): "
                << (r.passed ? "pass" : "FAIL") << " - " << r.details
                << std::endl;
    }
    results.push_back(std::move(r));
  };
  push(criterion_tauk_bound());
  push(criterion_tauk_tightness());
  push(criterion_few_path_bound());
  push(criterion_closed_tour_bound());
  push(criterion_schedule_feasibility());
  push(criterion_water_caps());
  push(criterion_backlog_120d(progress));
  push(criterion_two_cup_lower());
  push(criterion_w_calculus());
  push(criterion_decompose_time());
  return results;
}

}  // namespace backlog
