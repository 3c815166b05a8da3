// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_CAVITY_HPP
#define ZENO_CAVITY_HPP

#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "zeno/curve.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/parallel.hpp"

namespace zeno::cavity
{

// Rates are in units of the optical frequency omega_0 = 1.
inline constexpr double kOmega0 = 1.0;

struct CavityParams
{
  double mode_volume = 1.0;
  double base_gamma1 = 1.0;  // single-photon scattering at unit volume
  double base_gamma2 = 1.0;  // two-photon absorption at unit volume
  double ring_coupling = 1e-3;
  double q_factor = std::numeric_limits<double>::infinity();

  void validate() const;
};

// (gamma2 / gamma1)(V) = (base_gamma2 / base_gamma1) / V. Infinite when
// base_gamma1 is zero.
double absorption_ratio(const CavityParams &params);

// Two-photon rate scales as field^4 ~ 1/V^2, scattering as field^2 ~ 1/V.
double scaled_gamma2(const CavityParams &params);
// base_gamma1 / V + omega_0 / Q.
double scaled_gamma1(const CavityParams &params);

dynamics::CoupledModePair ring_pair(const CavityParams &params);

// The two-ring device as a coupled-mode gate with kappa = ring_coupling and the
// scaled rates. With V = 1, Q = inf this is exactly
// coupled_absorption_problem(pair, base_gamma2, base_gamma1).
lindblad::MasterEquationProblem ring_gate_problem(const CavityParams &params);

lindblad::GammaPoint evaluate_ring_gate(const CavityParams &params);

// Gate at a fixed two-photon rate gamma2 (the design budget). Shrinking V raises
// the absorption ratio, so the accompanying scattering is
//   gamma1 = gamma2 / absorption_ratio(V) + omega_0 / Q.
lindblad::MasterEquationProblem fixed_budget_problem(const CavityParams &params, double gamma2);

// Rows (mode_volume, absorption_ratio, gamma1_over_kappa, event_failure, gate_error).
ExperimentCurve volume_sweep(const CavityParams &params, const std::vector<double> &volumes,
                             double gamma2_over_kappa, Execution exec = Execution::parallel);

// Rows (q_factor, gamma1_over_kappa, event_failure, gate_error) at params.mode_volume.
ExperimentCurve quality_sweep(const CavityParams &params, const std::vector<double> &q_factors,
                              double gamma2_over_kappa, Execution exec = Execution::parallel);

// Single-excitation model of a waveguide feeding a resonator through a variable
// coupler: sites 0..M-1 with nearest-neighbour hopping -hop, resonator (index M)
// coupled to site M-1 with strength g(t). The packet starts at `center` with a
// Gaussian envelope whose |psi|^2 has full width at half maximum `width`, and
// carrier wavenumber k0 (group velocity 2 hop sin k0, towards the resonator).
struct WaveguideChain
{
  int n_sites = 40;
  double hop = 1.0;
  double center = 20.0;
  double width = 10.0;
  double k0 = std::numbers::pi / 2.0;

  void validate() const;
  std::size_t dimension() const { return static_cast<std::size_t>(n_sites) + 1; }
  std::size_t resonator_index() const { return static_cast<std::size_t>(n_sites); }
};

using fock::Vector;

// g(t) sampled on a uniform grid starting at t = 0; linear interpolation between
// samples.
struct SampledPulse
{
  double dt;
  std::vector<double> values;

  double duration() const;
  double at(double t) const;
};

// g(t) = g_max / sqrt(1 + exp((t - t_center) / tau)): strong coupling while the
// packet arrives, switched off once it is inside.
struct PulseShape
{
  double g_max;
  double t_center;
  double tau;

  double operator()(double t) const;
};

inline constexpr double kCatchStep = 0.005;       // integration step, units of 1/hop
inline constexpr double kCatchDuration = 20.0;    // units of 1/hop
inline constexpr double kNormTolerance = 1e-9;

SampledPulse sample_pulse(const PulseShape &shape, double duration, double dt = kCatchStep);
SampledPulse constant_pulse(double g, double duration, double dt = kCatchStep);
SampledPulse time_reversed(const SampledPulse &pulse);

// Normalized packet on the chain, resonator empty.
Vector initial_packet(const WaveguideChain &chain);
Vector resonator_excitation(const WaveguideChain &chain);
Vector site_excitation(const WaveguideChain &chain, int site);

struct ChainEvolution
{
  Vector state;
  std::vector<double> times;
  std::vector<double> coupling;
  std::vector<double> resonator_population;
  std::vector<double> total_population;
};

// RK4 on the time-dependent single-excitation Schrodinger equation over the
// pulse duration. Integration step is the largest value <= kCatchStep / hop
// dividing the duration; the pulse must be sampled at least that finely.
// Records every `record_every` steps (0: endpoints only).
ChainEvolution evolve_chain(const WaveguideChain &chain, const SampledPulse &pulse, const Vector &initial,
                            std::size_t record_every = 0);

struct CatchResult
{
  double capture_efficiency;
  double norm_drift;
  ExperimentCurve curve;  // (time, coupling, resonator_population, total_population)
};

CatchResult catch_release(const WaveguideChain &chain, const SampledPulse &pulse);

// Chain population after emitting from a filled resonator under `pulse`.
double release_efficiency(const WaveguideChain &chain, const SampledPulse &pulse);

struct PulseGrid
{
  std::vector<double> g_max;
  std::vector<double> t_center;
  std::vector<double> tau;
  double duration = kCatchDuration;

  std::size_t size() const { return g_max.size() * t_center.size() * tau.size(); }
};

PulseGrid default_pulse_grid(const WaveguideChain &chain);

struct GridSearchResult
{
  PulseShape best;
  double efficiency;
  std::size_t evaluated;
};

// Exhaustive search; ties go to the first point in (g_max, t_center, tau) order.
GridSearchResult grid_search(const WaveguideChain &chain, const PulseGrid &grid, Execution exec = Execution::parallel);

}  // namespace zeno::cavity

#endif  // ZENO_CAVITY_HPP
