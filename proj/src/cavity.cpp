// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zeno/error.hpp"

namespace zeno::cavity
{

namespace
{

using fock::Complex;
using fock::kI;

bool nonneg(double x) { return x >= 0.0 && !std::isnan(x); }

// y = -i H(g) x for the tridiagonal chain + resonator Hamiltonian.
void apply_generator(const WaveguideChain &chain, double g, const Vector &x, Vector &y)
{
  const Eigen::Index m = chain.n_sites;
  const double j = -chain.hop;
  for (Eigen::Index s = 0; s < m; ++s)
  {
    Complex h = 0.0;
    if (s > 0)
    {
      h += j * x(s - 1);
    }
    if (s + 1 < m)
    {
      h += j * x(s + 1);
    }
    y(s) = h;
  }
  y(m - 1) += g * x(m);
  y(m) = g * x(m - 1);
  y *= -kI;
}

}  // namespace

void CavityParams::validate() const
{
  if (!(mode_volume > 0.0) || !std::isfinite(mode_volume))
  {
    throw std::invalid_argument("mode volume must be positive and finite");
  }
  if (!nonneg(base_gamma1) || !nonneg(base_gamma2) || !std::isfinite(base_gamma1) || !std::isfinite(base_gamma2))
  {
    throw std::invalid_argument("base rates must be finite and nonnegative");
  }
  if (!(ring_coupling > 0.0) || !std::isfinite(ring_coupling))
  {
    throw std::invalid_argument("ring coupling must be positive");
  }
  if (!(q_factor > 0.0))
  {
    throw std::invalid_argument("Q factor must be positive (inf for a lossless cavity)");
  }
}

double absorption_ratio(const CavityParams &params)
{
  params.validate();
  if (params.base_gamma1 == 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return (params.base_gamma2 / params.base_gamma1) / params.mode_volume;
}

double scaled_gamma2(const CavityParams &params)
{
  params.validate();
  return params.base_gamma2 / (params.mode_volume * params.mode_volume);
}

double scaled_gamma1(const CavityParams &params)
{
  params.validate();
  return params.base_gamma1 / params.mode_volume + kOmega0 / params.q_factor;
}

dynamics::CoupledModePair ring_pair(const CavityParams &params)
{
  params.validate();
  return dynamics::make_coupled_pair(params.ring_coupling);
}

lindblad::MasterEquationProblem ring_gate_problem(const CavityParams &params)
{
  return lindblad::coupled_absorption_problem(ring_pair(params), scaled_gamma2(params), scaled_gamma1(params));
}

lindblad::GammaPoint evaluate_ring_gate(const CavityParams &params)
{
  return lindblad::evaluate_gate(ring_gate_problem(params), params.ring_coupling, scaled_gamma2(params));
}

lindblad::MasterEquationProblem fixed_budget_problem(const CavityParams &params, double gamma2)
{
  if (!nonneg(gamma2) || !std::isfinite(gamma2))
  {
    throw std::invalid_argument("two-photon rate budget must be finite and nonnegative");
  }
  const double ratio = absorption_ratio(params);
  const double gamma1 = (std::isinf(ratio) ? 0.0 : gamma2 / ratio) + kOmega0 / params.q_factor;
  return lindblad::coupled_absorption_problem(ring_pair(params), gamma2, gamma1);
}

ExperimentCurve volume_sweep(const CavityParams &params, const std::vector<double> &volumes,
                             double gamma2_over_kappa, Execution exec)
{
  params.validate();
  const double gamma2 = gamma2_over_kappa * params.ring_coupling;
  std::vector<std::array<double, 5>> rows(volumes.size());
  parallel_for(volumes.size(), exec, [&](std::size_t i) {
    CavityParams p = params;
    p.mode_volume = volumes[i];
    const auto problem = fixed_budget_problem(p, gamma2);
    const auto point = lindblad::evaluate_gate(problem, p.ring_coupling, gamma2);
    const double gamma1 = problem.channels().back().rate;
    rows[i] = {volumes[i], absorption_ratio(p), gamma1 / p.ring_coupling, point.event_failure, point.gate_error};
  });
  ExperimentCurve curve("cavity-ratio",
                        {"mode_volume", "absorption_ratio", "gamma1_over_kappa", "event_failure", "gate_error"});
  for (const auto &r : rows)
  {
    curve.add_row({r.begin(), r.end()});
  }
  curve.set_plot(PlotSpec{"mode_volume", {"event_failure", "gate_error"}, true, true,
                          "Gate error vs mode volume at fixed two-photon rate", "mode volume V", "error probability"});
  return curve;
}

ExperimentCurve quality_sweep(const CavityParams &params, const std::vector<double> &q_factors,
                              double gamma2_over_kappa, Execution exec)
{
  params.validate();
  const double gamma2 = gamma2_over_kappa * params.ring_coupling;
  std::vector<std::array<double, 4>> rows(q_factors.size());
  parallel_for(q_factors.size(), exec, [&](std::size_t i) {
    CavityParams p = params;
    p.q_factor = q_factors[i];
    const auto problem = fixed_budget_problem(p, gamma2);
    const auto point = lindblad::evaluate_gate(problem, p.ring_coupling, gamma2);
    const double gamma1 = problem.channels().back().rate;
    rows[i] = {q_factors[i], gamma1 / p.ring_coupling, point.event_failure, point.gate_error};
  });
  ExperimentCurve curve("cavity-q", {"q_factor", "gamma1_over_kappa", "event_failure", "gate_error"});
  for (const auto &r : rows)
  {
    curve.add_row({r.begin(), r.end()});
  }
  curve.set_plot(PlotSpec{"q_factor", {"event_failure", "gate_error"}, true, true, "Gate error vs cavity Q",
                          "quality factor Q", "error probability"});
  return curve;
}

void WaveguideChain::validate() const
{
  if (n_sites < 10)
  {
    throw std::invalid_argument("waveguide chain needs at least 10 sites");
  }
  if (!nonneg(hop) || !std::isfinite(hop))
  {
    throw std::invalid_argument("hop amplitude must be finite and nonnegative");
  }
  if (!(center >= 0.0) || !(center <= n_sites - 1))
  {
    throw std::invalid_argument("packet center must lie on the chain");
  }
  if (!(width > 0.0) || !std::isfinite(width))
  {
    throw std::invalid_argument("packet width must be positive");
  }
  if (!std::isfinite(k0))
  {
    throw std::invalid_argument("carrier wavenumber must be finite");
  }
}

double SampledPulse::duration() const
{
  return values.empty() ? 0.0 : dt * static_cast<double>(values.size() - 1);
}

double SampledPulse::at(double t) const
{
  if (values.empty())
  {
    return 0.0;
  }
  const double x = std::clamp(t / dt, 0.0, static_cast<double>(values.size() - 1));
  const auto k = std::min(static_cast<std::size_t>(x), values.size() - 1);
  if (k + 1 >= values.size())
  {
    return values.back();
  }
  const double f = x - static_cast<double>(k);
  return (1.0 - f) * values[k] + f * values[k + 1];
}

double PulseShape::operator()(double t) const
{
  return g_max / std::sqrt(1.0 + std::exp((t - t_center) / tau));
}

SampledPulse sample_pulse(const PulseShape &shape, double duration, double dt)
{
  if (!(shape.tau > 0.0) || !nonneg(shape.g_max))
  {
    throw std::invalid_argument("pulse needs tau > 0 and g_max >= 0");
  }
  if (!(duration > 0.0) || !(dt > 0.0))
  {
    throw std::invalid_argument("pulse duration and sampling step must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(std::ceil(duration / dt - 1e-9)));
  SampledPulse p{duration / static_cast<double>(n), {}};
  p.values.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
  {
    p.values[k] = shape(p.dt * static_cast<double>(k));
  }
  return p;
}

SampledPulse constant_pulse(double g, double duration, double dt)
{
  if (!(duration > 0.0) || !(dt > 0.0))
  {
    throw std::invalid_argument("pulse duration and sampling step must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(std::ceil(duration / dt - 1e-9)));
  return SampledPulse{duration / static_cast<double>(n), std::vector<double>(n + 1, g)};
}

SampledPulse time_reversed(const SampledPulse &pulse)
{
  return SampledPulse{pulse.dt, std::vector<double>(pulse.values.rbegin(), pulse.values.rend())};
}

Vector initial_packet(const WaveguideChain &chain)
{
  chain.validate();
  // |psi|^2 ~ exp(-(x - c)^2 / (2 s^2)) with FWHM = 2 sqrt(2 ln 2) s.
  const double s = chain.width / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(chain.dimension()));
  for (int j = 0; j < chain.n_sites; ++j)
  {
    const double d = j - chain.center;
    psi(j) = std::exp(-d * d / (4.0 * s * s)) * std::polar(1.0, chain.k0 * j);
  }
  return psi / psi.norm();
}

Vector resonator_excitation(const WaveguideChain &chain)
{
  chain.validate();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(chain.dimension()));
  psi(static_cast<Eigen::Index>(chain.resonator_index())) = 1.0;
  return psi;
}

Vector site_excitation(const WaveguideChain &chain, int site)
{
  chain.validate();
  if (site < 0 || site >= chain.n_sites)
  {
    throw std::out_of_range("site index outside the chain");
  }
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(chain.dimension()));
  psi(site) = 1.0;
  return psi;
}

ChainEvolution evolve_chain(const WaveguideChain &chain, const SampledPulse &pulse, const Vector &initial,
                            std::size_t record_every)
{
  chain.validate();
  if (static_cast<std::size_t>(initial.size()) != chain.dimension())
  {
    throw std::invalid_argument("initial state must live in the single-excitation sector (dimension M + 1)");
  }
  if (std::abs(initial.norm() - 1.0) > kNormTolerance)
  {
    throw std::invalid_argument("initial single-excitation state must be normalized");
  }
  if (pulse.values.size() < 2 || !(pulse.dt > 0.0))
  {
    throw std::invalid_argument("coupling pulse needs at least two samples and a positive step");
  }
  double g_scale = 0.0;
  for (double g : pulse.values)
  {
    if (!std::isfinite(g))
    {
      throw std::invalid_argument("coupling pulse samples must be finite");
    }
    g_scale = std::max(g_scale, std::abs(g));
  }
  const double scale = std::max(chain.hop, g_scale);
  const double h_max = scale > 0.0 ? kCatchStep / scale : kCatchStep;
  if (pulse.dt > h_max * (1.0 + 1e-9))
  {
    throw std::invalid_argument("coupling pulse is sampled more coarsely than the integration step");
  }
  const double duration = pulse.duration();
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(duration / h_max - 1e-9)));
  const double h = duration / static_cast<double>(steps);
  const Eigen::Index r = static_cast<Eigen::Index>(chain.resonator_index());

  ChainEvolution out;
  out.state = initial;
  auto record = [&](double t) {
    out.times.push_back(t);
    out.coupling.push_back(pulse.at(t));
    out.resonator_population.push_back(std::norm(out.state(r)));
    out.total_population.push_back(out.state.squaredNorm());
  };
  record(0.0);

  const Eigen::Index n = initial.size();
  Vector k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < steps; ++s)
  {
    const double t = h * static_cast<double>(s);
    const double g0 = pulse.at(t);
    const double gm = pulse.at(t + 0.5 * h);
    const double g1 = pulse.at(t + h);
    apply_generator(chain, g0, out.state, k1);
    tmp = out.state + 0.5 * h * k1;
    apply_generator(chain, gm, tmp, k2);
    tmp = out.state + 0.5 * h * k2;
    apply_generator(chain, gm, tmp, k3);
    tmp = out.state + h * k3;
    apply_generator(chain, g1, tmp, k4);
    out.state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((record_every > 0 && (s + 1) % record_every == 0) || s + 1 == steps)
    {
      record(t + h);
    }
  }
  const double drift = std::abs(out.state.squaredNorm() - initial.squaredNorm());
  if (drift > kNormTolerance)
  {
    throw InvariantError("excitation conservation", "norm drifted by " + std::to_string(drift));
  }
  return out;
}

CatchResult catch_release(const WaveguideChain &chain, const SampledPulse &pulse)
{
  const auto psi0 = initial_packet(chain);
  const auto evo = evolve_chain(chain, pulse, psi0, 100);
  ExperimentCurve curve("catch", {"time", "coupling", "resonator_population", "total_population"});
  for (std::size_t i = 0; i < evo.times.size(); ++i)
  {
    curve.add_row({evo.times[i], evo.coupling[i], evo.resonator_population[i], evo.total_population[i]});
  }
  curve.set_plot(PlotSpec{"time", {"coupling", "resonator_population"}, false, false,
                          "Single-photon capture with a variable coupler", "time (1/hop)", "population / coupling"});
  return CatchResult{evo.resonator_population.back(), std::abs(evo.total_population.back() - 1.0), std::move(curve)};
}

double release_efficiency(const WaveguideChain &chain, const SampledPulse &pulse)
{
  const auto evo = evolve_chain(chain, pulse, resonator_excitation(chain));
  return evo.total_population.back() - evo.resonator_population.back();
}

PulseGrid default_pulse_grid(const WaveguideChain &chain)
{
  chain.validate();
  PulseGrid grid;
  for (int k = 1; k <= 10; ++k)
  {
    grid.g_max.push_back(0.1 * k * std::max(chain.hop, 1e-3));
  }
  for (int k = 0; k <= 12; ++k)
  {
    grid.t_center.push_back(0.5 * kCatchDuration * k / 12.0 + 0.25 * kCatchDuration);
  }
  for (int k = 1; k <= 8; ++k)
  {
    grid.tau.push_back(0.25 * k);
  }
  return grid;
}

GridSearchResult grid_search(const WaveguideChain &chain, const PulseGrid &grid, Execution exec)
{
  chain.validate();
  if (grid.size() == 0)
  {
    throw std::invalid_argument("pulse grid is empty");
  }
  const std::size_t nt = grid.t_center.size();
  const std::size_t nu = grid.tau.size();
  const auto psi0 = initial_packet(chain);
  std::vector<double> eff(grid.size());
  parallel_for(grid.size(), exec, [&](std::size_t i) {
    const PulseShape shape{grid.g_max[i / (nt * nu)], grid.t_center[(i / nu) % nt], grid.tau[i % nu]};
    const auto evo = evolve_chain(chain, sample_pulse(shape, grid.duration, kCatchStep / std::max(chain.hop, shape.g_max)),
                                  psi0);
    eff[i] = evo.resonator_population.back();
  });
  const auto best = static_cast<std::size_t>(std::max_element(eff.begin(), eff.end()) - eff.begin());
  return GridSearchResult{PulseShape{grid.g_max[best / (nt * nu)], grid.t_center[(best / nu) % nt], grid.tau[best % nu]},
                          eff[best], grid.size()};
}

}  // namespace zeno::cavity
