// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_TRANSPARENCY_HPP
#define ZENO_TRANSPARENCY_HPP

#include <complex>
#include <string>
#include <vector>

#include "zeno/curve.hpp"
#include "zeno/parallel.hpp"

namespace zeno::transparency
{

// Resonator modes l (at -Delta/2) and m (at +Delta/2) side-coupled to a waveguide,
// both coupled to a two-photon atomic transition. delta is measured from the
// midpoint between the modes.
struct TwoModeCavitySpec
{
  double delta_spacing = 1.0;  // Delta
  double gamma_r = 0.03;       // loaded resonator linewidth
  double gamma_a = 0.002;      // two-photon transition linewidth
  double g = 1.0;              // photon-mode coupling
  double mu = 1.0;             // mode-atom coupling
  double t0 = 1.0;             // absorption scale
  bool include_l = true;       // ablation switches for the two mode terms
  bool include_m = true;

  // Throws std::invalid_argument on hard errors; returns warnings for parameters
  // outside the interference regime.
  std::vector<std::string> validate() const;
};

// A1 = g^2 [1/(delta + Delta/2 + i Gamma_R/2) + 1/(delta - Delta/2 + i Gamma_R/2)].
std::complex<double> scattering_amplitude(const TwoModeCavitySpec &spec, double delta);

double scattering_rate(const TwoModeCavitySpec &spec, double delta);

// T = T0 (Gamma_A/2)^2 / ((2 delta)^2 + (Gamma_A/2)^2) * |B|^2,
// |B|^2 = |g mu|^4 [sum over modes 1/((delta -+ Delta/2)^2 + Gamma_R^2/4)]^2.
double two_photon_response(const TwoModeCavitySpec &spec, double delta);

// Scattering at delta = 0 relative to the single-mode on-resonance rate 4 g^4 / Gamma_R^2.
double dip_ratio(const TwoModeCavitySpec &spec);

// 4 Gamma_R^4 / (Delta^2 + Gamma_R^2)^2.
double closed_form_dip_ratio(double delta_spacing, double gamma_r);

// T(0) / |A1(0)|^2.
double suppression_figure(const TwoModeCavitySpec &spec);

// Uniform grid delta_k = (lo (n-1-k) + hi k) / (n-1): symmetric ranges give
// exactly mirrored points.
std::vector<double> detuning_grid(double lo, double hi, int n);

// Rows (delta, single_photon_scattering, two_photon_absorption).
ExperimentCurve transparency_curves(const TwoModeCavitySpec &spec, double delta_min = -1.5, double delta_max = 1.5,
                                    int n_points = 3001, Execution exec = Execution::parallel);

}  // namespace zeno::transparency

#endif  // ZENO_TRANSPARENCY_HPP
