// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/experiments.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zeno/cavity.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/optics.hpp"
#include "zeno/transparency.hpp"
#include "zeno/zeno_gate.hpp"

#ifndef ZENO_VERSION
#define ZENO_VERSION "0.0.0"
#endif

namespace zeno::experiments
{

namespace
{

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
  {
    out.push_back(trim(item));
  }
  return out;
}

std::string fixed(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Short form for summary text; data files keep full precision.
std::string brief(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::string kPiOverTwo = format_real(std::numbers::pi / 2.0);

// ---------------------------------------------------------------- cnot

ExperimentResult run_cnot(const Parameters &, Execution)
{
  const optics::PbsCnot gate;
  ExperimentCurve table("cnot", {"control_in", "target_in", "control_out", "target_out", "success_probability",
                                 "min_fidelity"});
  ExperimentCurve patterns("cnot-patterns", {"control_in", "target_in", "photons_control", "photons_target",
                                             "photons_detector_control", "photons_detector_target", "probability",
                                             "accepted"});
  double p_min = 1.0;
  double p_max = 0.0;
  double f_min = 1.0;
  for (int c = 0; c < 2; ++c)
  {
    for (int t = 0; t < 2; ++t)
    {
      const auto qc = c == 0 ? optics::kLogicalZero : optics::kLogicalOne;
      const auto qt = t == 0 ? optics::kLogicalZero : optics::kLogicalOne;
      const auto r = gate.run(qc, qt);
      Eigen::Index out = 0;
      r.output.cwiseAbs2().maxCoeff(&out);
      table.add_row({double(c), double(t), double(out / 2), double(out % 2), r.success_probability, r.min_fidelity});
      p_min = std::min(p_min, r.success_probability);
      p_max = std::max(p_max, r.success_probability);
      f_min = std::min(f_min, r.min_fidelity);
      for (const auto &o : gate.outcome_distribution(qc, qt))
      {
        const auto &n = o.photons_per_path;
        const bool accepted = n[optics::CnotPaths::ancilla_control] == 1 && n[optics::CnotPaths::ancilla_target] == 1;
        patterns.add_row({double(c), double(t), double(n[0]), double(n[1]), double(n[2]), double(n[3]), o.probability,
                          accepted ? 1.0 : 0.0});
      }
    }
  }
  table.set_plot(PlotSpec{"control_in", {"success_probability"}, false, false, "CNOT success probability",
                          "control input", "probability"});
  patterns.set_plot(PlotSpec{"photons_detector_control", {"probability"}, false, false, "Detector path statistics",
                             "photons in control-side detector path", "probability"});
  table.set_metadata("min_success_probability", format_real(p_min));
  table.set_metadata("max_success_probability", format_real(p_max));
  table.set_metadata("min_fidelity", format_real(f_min));

  ExperimentResult res;
  res.curves = {std::move(table), std::move(patterns)};
  res.summary = "cnot: success probability " + fixed(p_min, 4) +
                (std::abs(p_max - p_min) < 1e-9 ? std::string(" for all four basis inputs")
                                                 : " to " + fixed(p_max, 4) + " over basis inputs") +
                ", min fidelity " + fixed(f_min, 6);
  return res;
}

// ---------------------------------------------------------------- zeno-n

ExperimentResult run_zeno_n(const Parameters &p, Execution exec)
{
  const auto pair = dynamics::make_coupled_pair(p.real("kappa"), p.real("kappa_t"));
  auto curve = dynamics::error_vs_n(pair, p.integer_list("n"), exec);
  const auto &first = curve.rows().front();
  const auto &last = curve.rows().back();
  ExperimentResult res;
  res.summary = "zeno-n: " + std::to_string(curve.rows().size()) + " points, gate_error(N=" +
                std::to_string(int(first[0])) + ") = " + fixed(first[1], 6) + ", gate_error(N=" +
                std::to_string(int(last[0])) + ") = " + sci(last[1]);
  res.curves.push_back(std::move(curve));
  return res;
}

// ---------------------------------------------------------------- zeno-tpa

ExperimentResult run_zeno_tpa(const Parameters &p, Execution exec)
{
  const auto pair = dynamics::make_coupled_pair(p.real("kappa"), p.real("kappa_t"));
  const auto ratios = lindblad::log_grid(p.real("gamma_min"), p.real("gamma_max"), p.integer("points"));
  std::vector<double> gammas(ratios.size());
  std::transform(ratios.begin(), ratios.end(), gammas.begin(), [&](double r) { return r * pair.kappa; });
  lindblad::GammaSweepOptions opts;
  opts.gamma1 = p.real("gamma1");
  opts.gamma1_ratio = p.real("gamma1_ratio");
  const auto points = lindblad::gamma_sweep(pair, gammas, opts, exec);
  double worst_gap = 0.0;
  for (const auto &pt : points)
  {
    worst_gap = std::max(worst_gap, pt.convergence_gap);
  }
  auto curve = lindblad::gamma_curve(points);
  curve.set_metadata("max_convergence_gap", format_real(worst_gap));
  ExperimentResult res;
  res.summary = "zeno-tpa: " + std::to_string(points.size()) + " points, gate_error " + sci(points.front().gate_error) +
                " at gamma2/kappa = " + brief(points.front().gamma2_over_kappa) + " -> " +
                sci(points.back().gate_error) + " at " + brief(points.back().gamma2_over_kappa);
  res.curves.push_back(std::move(curve));
  return res;
}

// ---------------------------------------------------------------- swap-prime

ExperimentResult run_swap_prime(const Parameters &p, Execution)
{
  const auto pair = dynamics::make_coupled_pair(p.real("kappa"), p.real("kappa_t"));
  const double gamma2 = p.real("gamma2_over_kappa") * pair.kappa;
  const auto problem = lindblad::coupled_absorption_problem(pair, gamma2, p.real("gamma1"));
  const auto point = lindblad::evaluate_gate(problem, pair.kappa, gamma2);
  const auto process = lindblad::process_tomography(problem);
  const auto map = process.vacuum_referenced_map();
  const auto ideal = dynamics::swap_prime_ideal();

  ExperimentCurve amplitudes("swap-prime", {"input", "output", "re", "im", "abs", "ideal_re", "ideal_im"});
  for (int i = 0; i < 4; ++i)
  {
    for (int k = 0; k < 4; ++k)
    {
      amplitudes.add_row({double(i), double(k), map(k, i).real(), map(k, i).imag(), std::abs(map(k, i)),
                          ideal(k, i).real(), ideal(k, i).imag()});
    }
  }
  amplitudes.set_plot(PlotSpec{"input", {"abs"}, false, false, "Conditional map |<k|M|i>|", "input basis index",
                               "amplitude"});
  ExperimentCurve choi("swap-prime-choi", {"row", "col", "re", "im"});
  for (int r = 0; r < 16; ++r)
  {
    for (int c = 0; c < 16; ++c)
    {
      choi.add_row({double(r), double(c), process.choi(r, c).real(), process.choi(r, c).imag()});
    }
  }
  choi.set_plot(PlotSpec{"row", {"re"}, false, false, "Choi matrix (real part)", "row", "value"});

  const double swap_error = std::abs(map(1, 2) - ideal(1, 2));
  const double phase_11 = std::arg(map(3, 3));
  for (auto *c : {&amplitudes, &choi})
  {
    c->set_metadata("process_fidelity", format_real(1.0 - point.gate_error));
    c->set_metadata("gate_error", format_real(point.gate_error));
    c->set_metadata("event_failure", format_real(point.event_failure));
    c->set_metadata("choi_trace", format_real(process.trace()));
    c->set_metadata("min_choi_eigenvalue", format_real(point.min_choi_eigenvalue));
    c->set_metadata("swap_amplitude_error", format_real(swap_error));
    c->set_metadata("phase_11", format_real(phase_11));
  }
  ExperimentResult res;
  res.summary = "swap-prime: process fidelity " + fixed(1.0 - point.gate_error, 6) + " at gamma2/kappa = " +
                brief(p.real("gamma2_over_kappa")) + ", |1,0> -> -i|0,1> amplitude error " + sci(swap_error) +
                ", |1,1> phase " + sci(phase_11) + " rad";
  res.curves = {std::move(amplitudes), std::move(choi)};
  return res;
}

// ---------------------------------------------------------------- cavity-ratio

ExperimentResult run_cavity_ratio(const Parameters &p, Execution exec)
{
  cavity::CavityParams params;
  params.base_gamma1 = p.real("base_gamma1");
  params.base_gamma2 = p.real("base_gamma2");
  params.ring_coupling = p.real("ring_coupling");
  params.q_factor = p.real("q_factor");
  const double budget = p.real("gamma2_over_kappa");
  const auto volumes = lindblad::log_grid(p.real("v_min"), p.real("v_max"), p.integer("v_points"));
  auto v_curve = cavity::volume_sweep(params, volumes, budget, exec);
  params.mode_volume = p.real("q_mode_volume");
  auto q_curve = cavity::quality_sweep(params, p.real_list("q_values"), budget, exec);
  const auto err = v_curve.column("gate_error");
  ExperimentResult res;
  res.summary = "cavity-ratio: gate_error " + sci(err.back()) + " at V = " + brief(volumes.back()) + " -> " +
                sci(err.front()) + " at V = " + brief(volumes.front()) + " (gamma2/kappa = " +
                brief(budget) + ")";
  res.curves = {std::move(v_curve), std::move(q_curve)};
  return res;
}

// ---------------------------------------------------------------- catch

ExperimentResult run_catch(const Parameters &p, Execution exec)
{
  cavity::WaveguideChain chain;
  chain.n_sites = p.integer("n_sites");
  chain.hop = p.real("hop");
  chain.center = p.real("center");
  chain.width = p.real("width");
  chain.k0 = p.real("k0");
  auto grid = cavity::default_pulse_grid(chain);
  grid.duration = p.real("duration");
  const auto best = cavity::grid_search(chain, grid, exec);
  const double dt = cavity::kCatchStep / std::max(chain.hop, best.best.g_max);
  const auto pulse = cavity::sample_pulse(best.best, grid.duration, dt);
  auto result = cavity::catch_release(chain, pulse);
  const double released = cavity::release_efficiency(chain, cavity::time_reversed(pulse));
  auto &curve = result.curve;
  curve.set_metadata("grid_points", std::to_string(best.evaluated));
  curve.set_metadata("best_g_max", format_real(best.best.g_max));
  curve.set_metadata("best_t_center", format_real(best.best.t_center));
  curve.set_metadata("best_tau", format_real(best.best.tau));
  curve.set_metadata("capture_efficiency", format_real(result.capture_efficiency));
  curve.set_metadata("release_efficiency", format_real(released));
  curve.set_metadata("norm_drift", format_real(result.norm_drift));
  ExperimentResult res;
  res.summary = "catch: capture efficiency " + fixed(result.capture_efficiency, 6) + " (g_max = " +
                brief(best.best.g_max) + ", t_c = " + brief(best.best.t_center) +
                ", tau = " + brief(best.best.tau) + "), time-reversed release " + fixed(released, 6);
  res.curves.push_back(std::move(curve));
  return res;
}

// ---------------------------------------------------------------- transparency

ExperimentResult run_transparency(const Parameters &p, Execution exec)
{
  transparency::TwoModeCavitySpec spec;
  spec.delta_spacing = p.real("delta_spacing");
  spec.gamma_r = p.real("gamma_r");
  spec.gamma_a = p.real("gamma_a");
  spec.g = p.real("g");
  spec.mu = p.real("mu");
  spec.t0 = p.real("t0");
  spec.include_l = p.boolean("include_l");
  spec.include_m = p.boolean("include_m");
  ExperimentResult res;
  res.warnings = spec.validate();
  auto curve = transparency::transparency_curves(spec, p.real("delta_min"), p.real("delta_max"), p.integer("points"),
                                                 exec);
  const auto deltas = curve.column("delta");
  const auto scat = curve.column("single_photon_scattering");
  const auto zero = static_cast<std::size_t>(
    std::min_element(deltas.begin(), deltas.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) -
    deltas.begin());
  const double peak = *std::max_element(scat.begin(), scat.end());
  const double ratio = scat[zero] / peak;
  curve.set_metadata("dip_ratio", format_real(transparency::dip_ratio(spec)));
  curve.set_metadata("scattering_zero_over_max", format_real(ratio));
  curve.set_metadata("suppression_figure", format_real(transparency::suppression_figure(spec)));
  res.summary = "transparency: scattering(0)/max = " + sci(ratio) + ", closed-form dip ratio " +
                sci(transparency::closed_form_dip_ratio(spec.delta_spacing, spec.gamma_r)) +
                ", two-photon peak at delta = " +
                brief(deltas[static_cast<std::size_t>(
                  std::max_element(curve.rows().begin(), curve.rows().end(),
                                   [](const auto &a, const auto &b) { return a[2] < b[2]; }) -
                  curve.rows().begin())]);
  res.curves.push_back(std::move(curve));
  return res;
}

}  // namespace

const char *engine_version() { return ZENO_VERSION; }

double parse_real(const std::string &text, const std::string &what)
{
  const std::string t = trim(text);
  if (t.empty())
  {
    throw UsageError(what + ": expected a number, got an empty value");
  }
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || std::isnan(v))
  {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  return v;
}

int parse_integer(const std::string &text, const std::string &what)
{
  const std::string t = trim(text);
  errno = 0;
  char *end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < INT32_MIN || v > INT32_MAX)
  {
    throw UsageError(what + ": '" + text + "' is not an integer");
  }
  return static_cast<int>(v);
}

Parameters::Parameters(const std::vector<ParamSpec> &specs)
{
  for (const auto &s : specs)
  {
    values_.emplace_back(s.key, s.default_value);
  }
}

bool Parameters::has(const std::string &key) const
{
  return std::any_of(values_.begin(), values_.end(), [&](const auto &kv) { return kv.first == key; });
}

void Parameters::set(const std::string &key, const std::string &value)
{
  for (auto &kv : values_)
  {
    if (kv.first == key)
    {
      kv.second = value;
      return;
    }
  }
  throw UsageError("unknown parameter '" + key + "'");
}

const std::string &Parameters::text(const std::string &key) const
{
  for (const auto &kv : values_)
  {
    if (kv.first == key)
    {
      return kv.second;
    }
  }
  throw UsageError("unknown parameter '" + key + "'");
}

double Parameters::real(const std::string &key) const { return parse_real(text(key), key); }

int Parameters::integer(const std::string &key) const { return parse_integer(text(key), key); }

bool Parameters::boolean(const std::string &key) const
{
  const std::string v = trim(text(key));
  if (v == "1" || v == "true" || v == "yes" || v == "on")
  {
    return true;
  }
  if (v == "0" || v == "false" || v == "no" || v == "off")
  {
    return false;
  }
  throw UsageError(key + ": '" + v + "' is not a boolean");
}

std::vector<double> Parameters::real_list(const std::string &key) const
{
  std::vector<double> out;
  for (const auto &item : split(text(key), ','))
  {
    out.push_back(parse_real(item, key));
  }
  if (out.empty())
  {
    throw UsageError(key + ": expected a comma-separated list");
  }
  return out;
}

std::vector<int> Parameters::integer_list(const std::string &key) const
{
  std::vector<int> out;
  for (const auto &item : split(text(key), ','))
  {
    const auto dots = item.find("..");
    if (dots == std::string::npos)
    {
      out.push_back(parse_integer(item, key));
      continue;
    }
    const int lo = parse_integer(item.substr(0, dots), key);
    const int hi = parse_integer(item.substr(dots + 2), key);
    if (hi < lo)
    {
      throw UsageError(key + ": empty range '" + item + "'");
    }
    for (int n = lo; n <= hi; ++n)
    {
      out.push_back(n);
    }
  }
  if (out.empty())
  {
    throw UsageError(key + ": expected integers or ranges like 3..200");
  }
  return out;
}

void apply_config_text(Parameters &params, const std::string &text, const std::string &origin)
{
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line))
  {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw UsageError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!params.has(key))
    {
      throw UsageError(origin + ":" + std::to_string(number) + ": unknown parameter '" + key + "'");
    }
    params.set(key, trim(line.substr(eq + 1)));
  }
}

void apply_config_file(Parameters &params, const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw UsageError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(params, buf.str(), path);
}

const std::vector<Experiment> &registry()
{
  static const std::vector<Experiment> list{
    {"cnot",
     "Post-selected polarization CNOT: truth table, success probabilities, detector statistics",
     {},
     run_cnot},
    {"zeno-n",
     "Gate error vs number of Zeno measurements",
     {{"kappa", "1", "mode coupling rate"},
      {"kappa_t", kPiOverTwo, "kappa * gate time"},
      {"n", "3..200", "measurement counts: list and inclusive ranges, e.g. 3..10,20"}},
     run_zeno_n},
    {"zeno-tpa",
     "Gate error vs two-photon absorption rate (master equation)",
     {{"kappa", "1", "mode coupling rate"},
      {"kappa_t", kPiOverTwo, "kappa * gate time"},
      {"gamma_min", "0.1", "smallest gamma2 / kappa"},
      {"gamma_max", "10000", "largest gamma2 / kappa"},
      {"points", "61", "log-spaced sweep points"},
      {"gamma1", "0", "single-photon loss rate"},
      {"gamma1_ratio", "0", "extra single-photon loss per unit gamma2"}},
     run_zeno_tpa},
    {"swap-prime",
     "Process matrix and fidelity of the absorption-induced SWAP' gate",
     {{"kappa", "1", "mode coupling rate"},
      {"kappa_t", kPiOverTwo, "kappa * gate time"},
      {"gamma2_over_kappa", "1000", "two-photon absorption rate / kappa"},
      {"gamma1", "0", "single-photon loss rate"}},
     run_swap_prime},
    {"cavity-ratio",
     "Gate error vs cavity mode volume at a fixed two-photon rate, and vs Q",
     {{"ring_coupling", "0.001", "ring-ring coupling kappa (units of omega_0)"},
      {"base_gamma1", "1", "single-photon scattering rate at unit volume"},
      {"base_gamma2", "1", "two-photon absorption rate at unit volume"},
      {"q_factor", "inf", "quality factor for the volume sweep"},
      {"gamma2_over_kappa", "1000", "two-photon rate budget / kappa"},
      {"v_min", "1e-6", "smallest mode volume"},
      {"v_max", "1e-2", "largest mode volume"},
      {"v_points", "13", "log-spaced volume points"},
      {"q_values", "1e4,1e5,1e6", "quality factors for the Q sweep"},
      {"q_mode_volume", "1e-6", "mode volume for the Q sweep"}},
     run_cavity_ratio},
    {"catch",
     "Single-photon capture into a resonator through a variable coupler",
     {{"n_sites", "40", "waveguide sites"},
      {"hop", "1", "nearest-neighbour hopping"},
      {"center", "20", "initial packet center (site)"},
      {"width", "10", "packet FWHM of |psi|^2 (sites)"},
      {"k0", kPiOverTwo, "carrier wavenumber"},
      {"duration", format_real(cavity::kCatchDuration), "pulse duration (1/hop)"}},
     run_catch},
    {"transparency",
     "Two-mode interference: single-photon scattering dip and two-photon absorption peak",
     {{"delta_spacing", "1", "mode spacing Delta"},
      {"gamma_r", "0.03", "resonator linewidth"},
      {"gamma_a", "0.002", "two-photon linewidth"},
      {"g", "1", "photon-mode coupling"},
      {"mu", "1", "mode-atom coupling"},
      {"t0", "1", "absorption scale"},
      {"delta_min", "-1.5", "lowest detuning"},
      {"delta_max", "1.5", "highest detuning"},
      {"points", "3001", "grid points"},
      {"include_l", "true", "include the lower mode"},
      {"include_m", "true", "include the upper mode"}},
     run_transparency},
  };
  return list;
}

const Experiment &find_experiment(const std::string &name)
{
  for (const auto &e : registry())
  {
    if (e.name == name)
    {
      return e;
    }
  }
  throw UsageError("unknown experiment '" + name + "'");
}

ExperimentResult run_experiment(const Experiment &experiment, const Parameters &params, Execution exec)
{
  ExperimentResult res = experiment.body(params, exec);
  for (auto &curve : res.curves)
  {
    ExperimentCurve stamped(curve.name(), curve.columns());
    stamped.set_metadata("experiment", experiment.name);
    stamped.set_metadata("engine_version", engine_version());
    for (const auto &[k, v] : params.resolved())
    {
      stamped.set_metadata(k, v);
    }
    for (const auto &[k, v] : curve.metadata())
    {
      stamped.set_metadata(k, v);
    }
    for (const auto &row : curve.rows())
    {
      stamped.add_row(row);
    }
    stamped.set_plot(curve.plot());
    curve = std::move(stamped);
  }
  return res;
}

}  // namespace zeno::experiments
