#include <benchmark/benchmark.h>

#include <cmath>

#include "plap/branch.hpp"
#include "plap/constants.hpp"
#include "plap/flow.hpp"
#include "plap/functional.hpp"
#include "plap/grid.hpp"
#include "plap/orbit.hpp"
#include "plap/sampling.hpp"

using namespace plap;

static void BM_EigenConstantsCold(benchmark::State& state) {
  for (auto _ : state) {
    constants::clear_cache();
    benchmark::DoNotOptimize(constants::eigen_constants(3.0));
  }
}
BENCHMARK(BM_EigenConstantsCold)->Unit(benchmark::kMicrosecond);

static void BM_Period(benchmark::State& state) {
  const Params P(3.0, 5.0);
  const double a = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(orbit::period(a, P));
}
BENCHMARK(BM_Period)->Arg(2)->Arg(50)->Arg(98)->Unit(benchmark::kMicrosecond);

static void BM_ShootPeriod(benchmark::State& state) {
  const Params P(3.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(orbit::shoot_period(0.5, P));
}
BENCHMARK(BM_ShootPeriod)->Unit(benchmark::kMicrosecond);

static void BM_TraceBranch(benchmark::State& state) {
  const Params P(3.0, 5.0);
  const auto grid = branch::linspace(0.02, 0.98, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(branch::trace_branch(P, grid));
}
BENCHMARK(BM_TraceBranch)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SpectralDerivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = grid::GridFunction::sample([](double x) { return std::exp(std::sin(x)); }, n);
  for (auto _ : state) benchmark::DoNotOptimize(grid::derivative(u));
}
BENCHMARK(BM_SpectralDerivative)->RangeMultiplier(4)->Range(256, 16384);

static void BM_Theorem1Check(benchmark::State& state) {
  sampling::Rng rng(1);
  const auto u = sampling::random_positive_trig(rng, 256);
  const Params P(3.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(functional::check_theorem1(u, P));
}
BENCHMARK(BM_Theorem1Check)->Unit(benchmark::kMicrosecond);

static void BM_FlowStep(benchmark::State& state) {
  flow::FlowConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  if (state.range(1) == 0) cfg.epsilon = 0.0;
  auto s = flow::start(flow::perturbed_constant(3.0, cfg.n), cfg);
  for (auto _ : state) flow::step(s, cfg);
}
BENCHMARK(BM_FlowStep)->Args({256, 0})->Args({256, 1})->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
