// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/transparency.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno::transparency
{

namespace
{

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

// 1/(x + i w) written as (x - i w)/(x^2 + w^2), so the real parts of the two
// mode terms cancel exactly at delta = 0.
std::complex<double> lorentz_amplitude(double x, double w)
{
  const double d = x * x + w * w;
  return {x / d, -w / d};
}

}  // namespace

std::vector<std::string> TwoModeCavitySpec::validate() const
{
  if (!positive(delta_spacing))
  {
    throw std::invalid_argument("mode spacing Delta must be positive");
  }
  if (!positive(gamma_r) || !positive(gamma_a))
  {
    throw std::invalid_argument("linewidths must be positive");
  }
  if (!std::isfinite(g) || !std::isfinite(mu) || !std::isfinite(t0) || t0 < 0.0)
  {
    throw std::invalid_argument("couplings must be finite and T0 nonnegative");
  }
  if (!include_l && !include_m)
  {
    throw std::invalid_argument("at least one resonator mode must be included");
  }
  std::vector<std::string> warnings;
  if (gamma_r >= delta_spacing)
  {
    warnings.emplace_back("Gamma_R >= Delta: modes overlap, outside the interference regime");
  }
  if (gamma_a >= delta_spacing)
  {
    warnings.emplace_back("Gamma_A >= Delta: two-photon peak no longer resolved");
  }
  return warnings;
}

std::complex<double> scattering_amplitude(const TwoModeCavitySpec &spec, double delta)
{
  const double half = 0.5 * spec.delta_spacing;
  const double w = 0.5 * spec.gamma_r;
  std::complex<double> sum = 0.0;
  if (spec.include_l)
  {
    sum += lorentz_amplitude(delta + half, w);
  }
  if (spec.include_m)
  {
    sum += lorentz_amplitude(delta - half, w);
  }
  return spec.g * spec.g * sum;
}

double scattering_rate(const TwoModeCavitySpec &spec, double delta)
{
  return std::norm(scattering_amplitude(spec, delta));
}

double two_photon_response(const TwoModeCavitySpec &spec, double delta)
{
  const double half = 0.5 * spec.delta_spacing;
  const double w2 = 0.25 * spec.gamma_r * spec.gamma_r;
  double field = 0.0;
  if (spec.include_l)
  {
    field += 1.0 / ((delta + half) * (delta + half) + w2);
  }
  if (spec.include_m)
  {
    field += 1.0 / ((delta - half) * (delta - half) + w2);
  }
  const double gm2 = spec.g * spec.g * spec.mu * spec.mu;
  const double b2 = gm2 * gm2 * field * field;
  const double ha2 = 0.25 * spec.gamma_a * spec.gamma_a;
  return spec.t0 * ha2 / (4.0 * delta * delta + ha2) * b2;
}

double dip_ratio(const TwoModeCavitySpec &spec)
{
  const double g2 = spec.g * spec.g;
  return scattering_rate(spec, 0.0) * spec.gamma_r * spec.gamma_r / (4.0 * g2 * g2);
}

double closed_form_dip_ratio(double delta_spacing, double gamma_r)
{
  const double s = delta_spacing * delta_spacing + gamma_r * gamma_r;
  return 4.0 * std::pow(gamma_r, 4) / (s * s);
}

double suppression_figure(const TwoModeCavitySpec &spec)
{
  return two_photon_response(spec, 0.0) / scattering_rate(spec, 0.0);
}

std::vector<double> detuning_grid(double lo, double hi, int n)
{
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
  {
    throw std::invalid_argument("detuning range is empty");
  }
  if (n < 3)
  {
    throw std::invalid_argument("detuning grid needs at least 3 points");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double m = n - 1;
  for (int k = 0; k < n; ++k)
  {
    out[static_cast<std::size_t>(k)] = (lo * (m - k) + hi * k) / m;
  }
  return out;
}

ExperimentCurve transparency_curves(const TwoModeCavitySpec &spec, double delta_min, double delta_max, int n_points,
                                    Execution exec)
{
  spec.validate();
  if (!(delta_min <= 0.0 && delta_max >= 0.0))
  {
    throw std::invalid_argument("detuning range must include delta = 0");
  }
  const auto deltas = detuning_grid(delta_min, delta_max, n_points);
  std::vector<double> scattering(deltas.size());
  std::vector<double> absorption(deltas.size());
  parallel_for(deltas.size(), exec, [&](std::size_t i) {
    scattering[i] = scattering_rate(spec, deltas[i]);
    absorption[i] = two_photon_response(spec, deltas[i]);
  });
  ExperimentCurve curve("transparency", {"delta", "single_photon_scattering", "two_photon_absorption"});
  for (std::size_t i = 0; i < deltas.size(); ++i)
  {
    curve.add_row({deltas[i], scattering[i], absorption[i]});
  }
  curve.set_plot(PlotSpec{"delta", {"single_photon_scattering", "two_photon_absorption"}, false, true,
                          "Two-mode interference transparency", "detuning delta / Delta", "rate (arb. units)"});
  return curve;
}

}  // namespace zeno::transparency
