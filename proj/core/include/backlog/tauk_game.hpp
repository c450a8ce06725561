#pragma once

#include <functional>
#include <map>
#include <vector>

#include "backlog/allocation.hpp"

namespace backlog {

// State of the discrete game: the adversary pours tau units per round, then
// the player empties the k fullest cups.  Only nonzero levels are stored; the
// cup universe is open-ended and grows as adversaries name new ids.
struct TaukState {
  std::map<int, double> levels;
  long round = 0;
  int next_id = 0;  // first cup id never used so far
};

// Per-round record taken after the player's move.
struct TaukRound {
  long round = 0;                     // 1-based round index j
  double after_pour_max = 0.0;        // max level between pour and emptying
  double max_level = 0.0;             // max level after the player's move
  std::vector<double> sorted_levels;  // descending; zero tail omitted
  double partial_sum = 0.0;           // sum of the (r-j)k+1 largest levels
};

struct TaukTrace {
  int r = 0;
  int k = 1;
  double tau = 0.0;
  std::vector<TaukRound> rounds;
};

// Sum_{i=1}^r 1/i, 0 for r = 0.
double harmonic(int r);

// The guarantee for the k-fullest player after r rounds: H_r * tau / k.
double lemma2_bound(int r, double tau, int k);

// One round: apply the pour, then zero the k largest levels (ties broken by
// smallest cup id), prune zeros, increment the round counter.
TaukState tauk_step(TaukState state, const PourAllocation& pour, int k);

// Adversary that pours tau split equally over the (r-j+1)k+1 fullest cups in
// round j, creating fresh empty cups when fewer exist.  This play makes the
// harmonic-sum bound tight.
PourAllocation equalizing_adversary(const TaukState& state, int j, int r,
                                    int k, double tau);

using TaukAdversary = std::function<PourAllocation(const TaukState&, int j)>;

TaukAdversary make_equalizing_adversary(int r, int k, double tau);
TaukAdversary make_single_cup_adversary(double tau);
// Spreads tau equally over the fixed cups 0..2k.
TaukAdversary make_spread_uniform_adversary(int k, double tau);
// Seeded random allocation over a random subset of a (r*k+1)-cup universe.
TaukAdversary make_random_tauk_adversary(unsigned long long seed, int r, int k,
                                         double tau);

// Plays r complete rounds and records the proof quantities per round.
TaukTrace run_tauk(int r, double tau, int k, const TaukAdversary& adversary);

}  // namespace backlog
