// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "zeno/cavity.hpp"
#include "zeno/error.hpp"

namespace zeno::cavity
{
namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(AbsorptionRatio, InverseVolumeLaw)
{
  CavityParams p;
  p.base_gamma1 = 2.0;
  p.base_gamma2 = 3.0;
  EXPECT_EQ(absorption_ratio(p), 1.5);
  for (double v1 : {1.0, 0.5, 1e-3, 0.37})
  {
    for (double v2 : {1.0, 0.25, 2e-5})
    {
      CavityParams a = p;
      CavityParams b = p;
      a.mode_volume = v1;
      b.mode_volume = v2;
      EXPECT_DOUBLE_EQ(absorption_ratio(a) / absorption_ratio(b), v2 / v1);
    }
  }
  CavityParams half = p;
  half.mode_volume = 0.5;
  EXPECT_EQ(absorption_ratio(half), 2.0 * absorption_ratio(p));
  CavityParams small = p;
  small.mode_volume = 1e-3;
  EXPECT_DOUBLE_EQ(absorption_ratio(small), 1e3 * absorption_ratio(p));
  p.mode_volume = 0.0;
  EXPECT_THROW(absorption_ratio(p), std::invalid_argument);
  p.mode_volume = -1.0;
  EXPECT_THROW(absorption_ratio(p), std::invalid_argument);
}

TEST(AbsorptionRatio, RateScaling)
{
  CavityParams p;
  p.mode_volume = 0.1;
  p.base_gamma1 = 1.0;
  p.base_gamma2 = 1.0;
  p.q_factor = 1e4;
  EXPECT_NEAR(scaled_gamma2(p), 100.0, 1e-12);
  EXPECT_NEAR(scaled_gamma1(p), 10.0 + 1e-4, 1e-12);
}

TEST(RingGate, UnitScalingReproducesCoupledModeSweepBitForBit)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto grid = lindblad::log_grid(0.1, 1e4, 61);
  const auto reference = lindblad::gamma_sweep(pair, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    CavityParams p;
    p.mode_volume = 1.0;
    p.base_gamma1 = 0.0;
    p.base_gamma2 = grid[i];
    p.ring_coupling = 1.0;
    p.q_factor = kInf;
    const auto point = evaluate_ring_gate(p);
    EXPECT_EQ(point.gate_error, reference[i].gate_error);
    EXPECT_EQ(point.event_failure, reference[i].event_failure);
  }
}

TEST(RingGate, ShrinkingVolumeLowersErrorAtFixedBudget)
{
  const CavityParams p;
  const auto curve = volume_sweep(p, lindblad::log_grid(1e-6, 1e-2, 13), 1e3);
  const auto v = curve.column("mode_volume");
  const auto err = curve.column("gate_error");
  for (std::size_t i = 1; i < err.size(); ++i)
  {
    EXPECT_LT(v[i - 1], v[i]);
    EXPECT_LT(err[i - 1], err[i]) << v[i];
  }
}

TEST(RingGate, LowerQRaisesError)
{
  CavityParams p;
  p.mode_volume = 1e-6;
  const auto curve = quality_sweep(p, {1e4, 1e5, 1e6}, 1e3);
  const auto err = curve.column("gate_error");
  EXPECT_GT(err[0], err[1]);
  EXPECT_GT(err[1], err[2]);
  const auto g1 = curve.column("gamma1_over_kappa");
  EXPECT_NEAR(g1[0], (1e3 * 1e-3 * 1e-6 + 1e-4) / 1e-3, 1e-12);
}

TEST(RingGate, SerialMatchesParallel)
{
  const CavityParams p;
  const auto vs = lindblad::log_grid(1e-5, 1e-3, 4);
  EXPECT_EQ(volume_sweep(p, vs, 1e3, Execution::serial).rows(), volume_sweep(p, vs, 1e3, Execution::parallel).rows());
}

TEST(WaveguideChain, PacketShape)
{
  const WaveguideChain chain;
  const auto psi = initial_packet(chain);
  ASSERT_EQ(psi.size(), 41);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  EXPECT_EQ(psi(40), fock::Complex(0.0));
  // |psi|^2 halves at center +- width / 2.
  EXPECT_NEAR(std::norm(psi(15)) / std::norm(psi(20)), 0.5, 1e-12);
  EXPECT_NEAR(std::norm(psi(25)) / std::norm(psi(20)), 0.5, 1e-12);
  // Carrier phase advances by k0 per site.
  EXPECT_NEAR(std::arg(psi(21) / psi(20)), std::numbers::pi / 2, 1e-12);

  WaveguideChain bad = chain;
  bad.n_sites = 5;
  EXPECT_THROW(initial_packet(bad), std::invalid_argument);
}

TEST(CatchRelease, ZeroCouplingCapturesNothing)
{
  const WaveguideChain chain;
  const auto r = catch_release(chain, constant_pulse(0.0, kCatchDuration));
  EXPECT_NEAR(r.capture_efficiency, 0.0, 1e-12);
  EXPECT_LT(r.norm_drift, 1e-9);
}

TEST(CatchRelease, TwoLevelRabiLimit)
{
  // hop = 0 isolates the end site: the excitation Rabi-oscillates into the
  // resonator with population sin^2(g t).
  WaveguideChain chain;
  chain.hop = 0.0;
  const double g = 0.8;
  const double duration = std::numbers::pi / (2 * g);
  const auto evo = evolve_chain(chain, constant_pulse(g, duration, 1e-3), site_excitation(chain, chain.n_sites - 1), 50);
  EXPECT_NEAR(evo.resonator_population.back(), 1.0, 1e-10);
  for (std::size_t i = 0; i < evo.times.size(); ++i)
  {
    EXPECT_NEAR(evo.resonator_population[i], std::pow(std::sin(g * evo.times[i]), 2), 1e-10);
  }
}

TEST(CatchRelease, InputValidation)
{
  const WaveguideChain chain;
  EXPECT_THROW(evolve_chain(chain, constant_pulse(0.5, 1.0, 0.05), initial_packet(chain)), std::invalid_argument);
  EXPECT_THROW(evolve_chain(chain, constant_pulse(0.5, 1.0), fock::Vector::Ones(10)), std::invalid_argument);
  EXPECT_THROW(evolve_chain(chain, constant_pulse(0.5, 1.0), 2.0 * initial_packet(chain)), std::invalid_argument);
  EXPECT_THROW(sample_pulse(PulseShape{1.0, 1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST(CatchRelease, GridSearchCapturesMostOfThePacket)
{
  const WaveguideChain chain;
  const auto grid = default_pulse_grid(chain);
  const auto best = grid_search(chain, grid);
  EXPECT_EQ(best.evaluated, grid.size());
  EXPECT_GE(best.efficiency, 0.9);

  const auto pulse = sample_pulse(best.best, grid.duration);
  const auto r = catch_release(chain, pulse);
  EXPECT_NEAR(r.capture_efficiency, best.efficiency, 1e-12);
  EXPECT_LT(r.norm_drift, 1e-9);
  for (double total : r.curve.column("total_population"))
  {
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
  // Time reversal: the mirrored pulse emits at least efficiency^2 back into the chain.
  EXPECT_GE(release_efficiency(chain, time_reversed(pulse)), r.capture_efficiency * r.capture_efficiency);
}

TEST(CatchRelease, GridSearchSerialMatchesParallel)
{
  const WaveguideChain chain;
  PulseGrid grid;
  grid.g_max = {0.4, 0.6};
  grid.t_center = {8.0, 10.0};
  grid.tau = {1.0, 1.5};
  const auto a = grid_search(chain, grid, Execution::serial);
  const auto b = grid_search(chain, grid, Execution::parallel);
  EXPECT_EQ(a.efficiency, b.efficiency);
  EXPECT_EQ(a.best.g_max, b.best.g_max);
  EXPECT_EQ(a.best.t_center, b.best.t_center);
  EXPECT_EQ(a.best.tau, b.best.tau);
}

TEST(SampledPulse, InterpolatesAndReverses)
{
  const SampledPulse p{0.5, {0.0, 1.0, 3.0}};
  EXPECT_DOUBLE_EQ(p.duration(), 1.0);
  EXPECT_DOUBLE_EQ(p.at(0.25), 0.5);
  EXPECT_DOUBLE_EQ(p.at(0.75), 2.0);
  EXPECT_DOUBLE_EQ(p.at(5.0), 3.0);
  const auto r = time_reversed(p);
  EXPECT_DOUBLE_EQ(r.at(0.0), 3.0);
  EXPECT_DOUBLE_EQ(r.at(1.0), 0.0);
}

}  // namespace
}  // namespace zeno::cavity
