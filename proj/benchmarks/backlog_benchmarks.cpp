#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "backlog/adversaries.hpp"
#include "backlog/engine.hpp"
#include "backlog/few_tour.hpp"
#include "backlog/geometry.hpp"
#include "backlog/rng.hpp"
#include "backlog/scenario.hpp"
#include "backlog/strategies.hpp"
#include "backlog/tauk_game.hpp"

namespace {

using namespace backlog;

PointSet random_cups(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pts.push_back(Point{uniform01(gen), uniform01(gen)});
  }
  return PointSet(pts);
}

void bm_few_path(benchmark::State& state) {
  const PointSet pts = random_cups(static_cast<int>(state.range(0)), 7);
  const Square sq{Point{0.0, 0.0}, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(few_path(pts, sq));
  }
}
BENCHMARK(bm_few_path)->Arg(64)->Arg(512)->Arg(4096);

void bm_water_window(benchmark::State& state) {
  // One cup with many closed deposits; query a window spanning half of them.
  Simulation sim(random_cups(4, 9), Point{0.5, 0.5});
  PourAllocation alloc;
  const int deposits = static_cast<int>(state.range(0));
  for (int i = 0; i < deposits; ++i) {
    alloc.amounts[i % 4] = 1.0;
    sim.set_pour_rates(alloc);
    sim.wait(0.5);
    alloc.amounts.clear();
  }
  const double mid = sim.clock() / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.water_in_window(0, mid / 2.0, mid));
  }
}
BENCHMARK(bm_water_window)->Arg(256)->Arg(4096);

void bm_tauk_rounds(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const TaukAdversary adversary = make_equalizing_adversary(r, 1, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_tauk(r, 1.0, 1, adversary));
  }
}
BENCHMARK(bm_tauk_rounds)->Arg(50)->Arg(500);

void bm_coroutine_run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    Simulation sim(random_cups(n, 21), Point{0.5, 0.5});
    const auto strategy = make_strategy("coroutine", sim.diameter(), 2000.0);
    const auto adversary = make_adversary(AdversaryKind::fullest_cup);
    RunConfig config;
    config.horizon = 2000.0;
    config.delta_adv = 1.0;
    config.sample_interval = 0.0;
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_game(sim, *strategy, *adversary, config));
  }
}
BENCHMARK(bm_coroutine_run)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
