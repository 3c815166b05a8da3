// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference against the OpenMP kernels. Arg(0) = serial, Arg(1) = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "zeno/cavity.hpp"
#include "zeno/fock.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/transparency.hpp"
#include "zeno/zeno_gate.hpp"

namespace
{

using namespace zeno;

Execution mode(const benchmark::State &state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_ErrorVsN(benchmark::State &state)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  std::vector<int> n;
  for (int k = 3; k <= 200; ++k)
  {
    n.push_back(k);
  }
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(dynamics::error_vs_n(pair, n, mode(state)));
  }
}
BENCHMARK(BM_ErrorVsN)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GammaSweep(benchmark::State &state)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto grid = lindblad::log_grid(0.1, 1e3, 16);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(lindblad::gamma_sweep(pair, grid, {}, mode(state)));
  }
}
BENCHMARK(BM_GammaSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TransparencyCurves(benchmark::State &state)
{
  const transparency::TwoModeCavitySpec spec;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(transparency::transparency_curves(spec, -1.5, 1.5, 30001, mode(state)));
  }
}
BENCHMARK(BM_TransparencyCurves)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PulseGridSearch(benchmark::State &state)
{
  const cavity::WaveguideChain chain;
  auto grid = cavity::default_pulse_grid(chain);
  grid.tau.resize(2);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(cavity::grid_search(chain, grid, mode(state)));
  }
}
BENCHMARK(BM_PulseGridSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LiftModeUnitary(benchmark::State &state)
{
  const auto basis = fock::enumerate_basis(8, 4);
  std::mt19937 rng(1);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m(8, 8);
  for (Eigen::Index i = 0; i < m.size(); ++i)
  {
    m(i) = {normal(rng), normal(rng)};
  }
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(fock::lift_mode_unitary(basis, u, mode(state)));
  }
}
BENCHMARK(BM_LiftModeUnitary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
