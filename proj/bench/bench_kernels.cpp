#include <benchmark/benchmark.h>

#include "cscim/experiments.hpp"
#include "cscim/fft.hpp"
#include "cscim/modem.hpp"
#include "cscim/radar.hpp"

using namespace cscim;
using namespace cscim::harness;

namespace {

ExperimentConfig small_bler() {
  auto cfg = desk_preset();
  cfg.schemes = {"csc-im-linear"};
  cfg.L_values = {2};
  return cfg;
}

void trial_runner(benchmark::State& state, Execution ex) {
  const auto cfg = small_bler();
  const Variant v{modem::Scheme::CscIm, chirp::Family::Linear, 2, false};
  auto run = cfg;
  run.max_trials = state.range(0);
  run.batch = state.range(0);
  run.min_errors = run.max_trials + 1;
  for (auto _ : state) benchmark::DoNotOptimize(bler_point(run, v, -2.0, 1, ex));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BlerSerial(benchmark::State& s) { trial_runner(s, Execution::Serial); }
void BM_BlerParallel(benchmark::State& s) { trial_runner(s, Execution::Parallel); }
BENCHMARK(BM_BlerSerial)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlerParallel)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();

void radar_runner(benchmark::State& state, Execution ex) {
  auto cfg = desk_preset();
  cfg.schemes = {"csc-im-linear"};
  cfg.L_values = {2};
  cfg.is_options = {true};
  cfg.scenario = "two";
  cfg.radar_snr_db = {30};
  cfg.trials = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_radar_rmse(cfg, ex));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RadarSerial(benchmark::State& s) { radar_runner(s, Execution::Serial); }
void BM_RadarParallel(benchmark::State& s) { radar_runner(s, Execution::Parallel); }
BENCHMARK(BM_RadarSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadarParallel)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

cvec random_vector(int n) {
  Rng rng(3);
  std::normal_distribution<double> n01;
  cvec x(static_cast<std::size_t>(n));
  for (auto& v : x) v = {n01(rng), n01(rng)};
  return x;
}

// Delay grid over M bins: chirp-Z against direct evaluation.
void BM_DelayGridChirpZ(benchmark::State& state) {
  const cvec x = random_vector(static_cast<int>(state.range(0)));
  const auto points = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fft::chirp_z(x, points, 0.1, 0.003));
}
void BM_DelayGridDirect(benchmark::State& state) {
  const cvec x = random_vector(static_cast<int>(state.range(0)));
  const auto points = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fft::chirp_z_direct(x, points, 0.1, 0.003));
}
BENCHMARK(BM_DelayGridChirpZ)->Args({64, 129})->Args({1448, 2048});
BENCHMARK(BM_DelayGridDirect)->Args({64, 129})->Args({1448, 2048});

}  // namespace

BENCHMARK_MAIN();
