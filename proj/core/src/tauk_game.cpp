#include "backlog/tauk_game.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "backlog/rng.hpp"

namespace backlog {

double harmonic(int r) {
  if (r < 0) throw std::invalid_argument("harmonic: negative r");
  double h = 0.0;
  for (int i = 1; i <= r; ++i) h += 1.0 / i;
  return h;
}

double lemma2_bound(int r, double tau, int k) {
  if (k < 1) throw std::invalid_argument("lemma2_bound: k must be >= 1");
  if (r < 0) throw std::invalid_argument("lemma2_bound: negative r");
  if (!(tau >= 0.0)) throw std::invalid_argument("lemma2_bound: negative tau");
  return harmonic(r) * tau / k;
}

namespace {

// Cups ordered fullest first, ties by smallest id.
std::vector<std::pair<int, double>> by_level_desc(
    const std::map<int, double>& levels) {
  std::vector<std::pair<int, double>> v(levels.begin(), levels.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return v;
}

}  // namespace

TaukState tauk_step(TaukState state, const PourAllocation& pour, int k) {
  if (k < 1) throw std::invalid_argument("tauk_step: k must be >= 1");
  for (const auto& [id, amount] : pour.amounts) {
    if (!(amount >= 0.0) || !std::isfinite(amount)) {
      throw std::invalid_argument("negative pour");
    }
    state.levels[id] += amount;
    if (id >= state.next_id) state.next_id = id + 1;
  }

  std::vector<std::pair<int, double>> order = by_level_desc(state.levels);
  const int emptied = std::min<std::size_t>(k, order.size());
  for (int i = 0; i < emptied; ++i) state.levels.erase(order[i].first);
  for (auto it = state.levels.begin(); it != state.levels.end();) {
    it = it->second == 0.0 ? state.levels.erase(it) : std::next(it);
  }
  ++state.round;
  return state;
}

PourAllocation equalizing_adversary(const TaukState& state, int j, int r,
                                    int k, double tau) {
  if (j < 1 || j > r) {
    throw std::invalid_argument("equalizing_adversary: round out of range");
  }
  const long width = static_cast<long>(r - j + 1) * k + 1;
  std::vector<std::pair<int, double>> order = by_level_desc(state.levels);

  PourAllocation alloc;
  const double share = tau / static_cast<double>(width);
  int fresh = state.next_id;
  for (long i = 0; i < width; ++i) {
    const int id = i < static_cast<long>(order.size())
                       ? order[static_cast<std::size_t>(i)].first
                       : fresh++;
    alloc.amounts[id] = share;
  }
  return alloc;
}

TaukAdversary make_equalizing_adversary(int r, int k, double tau) {
  return [r, k, tau](const TaukState& state, int j) {
    return equalizing_adversary(state, j, r, k, tau);
  };
}

TaukAdversary make_single_cup_adversary(double tau) {
  return [tau](const TaukState&, int) {
    PourAllocation alloc;
    alloc.amounts[0] = tau;
    return alloc;
  };
}

TaukAdversary make_spread_uniform_adversary(int k, double tau) {
  return [k, tau](const TaukState&, int) {
    PourAllocation alloc;
    const int width = 2 * k + 1;
    for (int id = 0; id < width; ++id) {
      alloc.amounts[id] = tau / static_cast<double>(width);
    }
    return alloc;
  };
}

TaukAdversary make_random_tauk_adversary(unsigned long long seed, int r, int k,
                                         double tau) {
  auto gen = std::make_shared<std::mt19937_64>(seed);
  const int universe = r * k + 1;
  return [gen, universe, tau](const TaukState&, int) {
    PourAllocation alloc;
    double total = 0.0;
    for (int id = 0; id < universe; ++id) {
      const double u = uniform01(*gen);
      if (u > 0.5) {
        alloc.amounts[id] = u;
        total += u;
      }
    }
    if (alloc.amounts.empty()) {
      alloc.amounts[0] = tau;
      return alloc;
    }
    for (auto& [id, w] : alloc.amounts) w = w / total * tau;
    return alloc;
  };
}

TaukTrace run_tauk(int r, double tau, int k, const TaukAdversary& adversary) {
  if (r < 0) throw std::invalid_argument("run_tauk: negative r");
  if (k < 1) throw std::invalid_argument("run_tauk: k must be >= 1");

  TaukTrace trace;
  trace.r = r;
  trace.k = k;
  trace.tau = tau;
  trace.rounds.reserve(r);

  TaukState state;
  for (int j = 1; j <= r; ++j) {
    const PourAllocation pour = adversary(state, j);

    TaukState poured = state;
    for (const auto& [id, amount] : pour.amounts) {
      if (!(amount >= 0.0)) throw std::invalid_argument("negative pour");
      poured.levels[id] += amount;
    }
    double after_pour_max = 0.0;
    for (const auto& [id, level] : poured.levels) {
      after_pour_max = std::max(after_pour_max, level);
    }

    state = tauk_step(std::move(state), pour, k);

    TaukRound rec;
    rec.round = j;
    rec.after_pour_max = after_pour_max;
    for (const auto& [id, level] : state.levels) {
      rec.sorted_levels.push_back(level);
    }
    std::sort(rec.sorted_levels.begin(), rec.sorted_levels.end(),
              std::greater<double>());
    rec.max_level = rec.sorted_levels.empty() ? 0.0 : rec.sorted_levels[0];
    const long width = static_cast<long>(r - j) * k + 1;
    const long take =
        std::min<long>(width, static_cast<long>(rec.sorted_levels.size()));
    for (long i = 0; i < take; ++i) {
      rec.partial_sum += rec.sorted_levels[static_cast<std::size_t>(i)];
    }
    trace.rounds.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace backlog
