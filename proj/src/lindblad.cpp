// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "zeno/error.hpp"

namespace zeno::lindblad
{

namespace
{

using fock::Complex;
using fock::kI;

std::string sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double spectral_radius_hermitian(const Matrix &m)
{
  if (m.size() == 0)
  {
    return 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool same_basis(const BasisPtr &a, const BasisPtr &b)
{
  return a->num_modes() == b->num_modes() && a->max_total() == b->max_total();
}

void check_checkpoint(const Matrix &rho, Complex initial_trace, std::size_t step)
{
  const Complex tr = rho.trace();
  if (std::abs(tr - initial_trace) > kTraceTolerance)
  {
    throw InvariantError("trace preservation", "trace drifted by " + sci(std::abs(tr - initial_trace)) +
                                                   " at step " + std::to_string(step));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -fock::kPositivityTolerance)
  {
    throw InvariantError("density-matrix positivity",
                         "eigenvalue " + sci(lowest) + " at step " + std::to_string(step));
  }
}

void check_initial_state(const MasterEquationProblem &problem, const DensityMatrix &rho0)
{
  if (!same_basis(problem.basis(), rho0.basis))
  {
    throw std::invalid_argument("initial density matrix lives on a different basis than the problem");
  }
  try
  {
    rho0.validate();
  }
  catch (const InvariantError &e)
  {
    throw std::invalid_argument(std::string("initial state is not a density matrix: ") + e.what());
  }
}

}  // namespace

LindbladChannel make_channel(OperatorMatrix jump, double rate)
{
  if (!(rate >= 0.0) || !std::isfinite(rate))
  {
    throw std::invalid_argument("Lindblad rates must be finite and nonnegative");
  }
  return LindbladChannel{std::move(jump), rate};
}

MasterEquationProblem::MasterEquationProblem(OperatorMatrix hamiltonian, std::vector<LindbladChannel> channels,
                                             double t_final, double dt)
  : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)), t_final_(t_final), dt_(dt), steps_(0)
{
  if (hamiltonian_.kind() != fock::OperatorKind::hermitian)
  {
    throw std::invalid_argument("master-equation Hamiltonian must be tagged hermitian");
  }
  for (const auto &c : channels_)
  {
    if (!same_basis(c.jump.basis(), hamiltonian_.basis()))
    {
      throw std::invalid_argument("jump operator acts on a different basis than the Hamiltonian");
    }
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate))
    {
      throw std::invalid_argument("Lindblad rates must be finite and nonnegative");
    }
    damping_.push_back(0.5 * c.rate * (c.jump.matrix().adjoint() * c.jump.matrix()));
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
  {
    throw std::invalid_argument("t_final must be finite and nonnegative");
  }
  if (t_final == 0.0)
  {
    return;
  }
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw std::invalid_argument("step size must be positive");
  }
  const double ratio = t_final / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
  {
    throw std::invalid_argument("step size must divide t_final");
  }
  steps_ = static_cast<std::size_t>(rounded);
  dt_ = t_final / rounded;
  const double bound = max_stable_step(hamiltonian_, channels_);
  if (dt_ > bound * (1.0 + 1e-12))
  {
    throw std::invalid_argument("step size " + sci(dt_) + " violates the stability bound " +
                                sci(bound));
  }
}

double MasterEquationProblem::max_stable_step(const OperatorMatrix &hamiltonian,
                                              const std::vector<LindbladChannel> &channels)
{
  double scale = spectral_radius_hermitian(hamiltonian.matrix());
  for (const auto &c : channels)
  {
    if (c.rate > 0.0)
    {
      const Matrix ldl = c.jump.matrix().adjoint() * c.jump.matrix();
      scale = std::max(scale, c.rate * spectral_radius_hermitian(ldl));
    }
  }
  return scale > 0.0 ? kStabilityFactor / scale : std::numeric_limits<double>::infinity();
}

MasterEquationProblem MasterEquationProblem::with_stable_step(OperatorMatrix hamiltonian,
                                                              std::vector<LindbladChannel> channels, double t_final,
                                                              int oversample)
{
  if (oversample < 1)
  {
    throw std::invalid_argument("step oversampling must be >= 1");
  }
  const double bound = max_stable_step(hamiltonian, channels) / oversample;
  double dt = 0.0;
  if (t_final > 0.0)
  {
    const double steps = std::isfinite(bound) ? std::max(1.0, std::ceil(t_final / bound)) : 1.0;
    dt = t_final / steps;
  }
  return MasterEquationProblem(std::move(hamiltonian), std::move(channels), t_final, dt);
}

MasterEquationProblem MasterEquationProblem::refined(int factor) const
{
  if (factor < 1)
  {
    throw std::invalid_argument("refinement factor must be >= 1");
  }
  return MasterEquationProblem(hamiltonian_, channels_, t_final_, dt_ / factor);
}

Matrix MasterEquationProblem::rhs(const Matrix &rho) const
{
  const Matrix &h = hamiltonian_.matrix();
  Matrix out = -kI * (h * rho - rho * h);
  for (std::size_t k = 0; k < channels_.size(); ++k)
  {
    const Matrix &l = channels_[k].jump.matrix();
    out.noalias() += channels_[k].rate * (l * rho * l.adjoint());
    out.noalias() -= damping_[k] * rho + rho * damping_[k];
  }
  return out;
}

RungeKuttaPropagator::RungeKuttaPropagator(const MasterEquationProblem &problem)
  : dim_(static_cast<Eigen::Index>(problem.basis()->dimension()))
{
  const Eigen::Index n = dim_ * dim_;
  generator_.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
  {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(k) = 1.0;
    generator_.col(k) = to_coordinates(problem.rhs(from_coordinates(e, dim_)));
  }
  const Eigen::MatrixXd hl = problem.dt() * generator_;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  // S - I in Horner form. Kept apart from the identity so that long products do
  // not lose the small increments to rounding.
  increment_ = hl * (id + 0.5 * hl * (id + (1.0 / 3.0) * hl * (id + 0.25 * hl)));
}

Eigen::MatrixXd RungeKuttaPropagator::step_map() const
{
  return Eigen::MatrixXd::Identity(increment_.rows(), increment_.cols()) + increment_;
}

Eigen::MatrixXd RungeKuttaPropagator::power(std::size_t steps) const
{
  // (I + A)(I + B) = I + A + B + AB, tracked on the increments.
  Eigen::MatrixXd result = Eigen::MatrixXd::Zero(increment_.rows(), increment_.cols());
  Eigen::MatrixXd base = increment_;
  while (steps > 0)
  {
    if (steps & 1U)
    {
      result = (result + base + base * result).eval();
    }
    steps >>= 1U;
    if (steps > 0)
    {
      base = (2.0 * base + base * base).eval();
    }
  }
  result.diagonal().array() += 1.0;
  return result;
}

Eigen::VectorXd RungeKuttaPropagator::to_coordinates(const Matrix &hermitian)
{
  const Eigen::Index d = hermitian.rows();
  Eigen::VectorXd c(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
  {
    c(k++) = hermitian(i, i).real();
  }
  for (Eigen::Index i = 0; i < d; ++i)
  {
    for (Eigen::Index j = i + 1; j < d; ++j)
    {
      c(k++) = hermitian(i, j).real();
      c(k++) = hermitian(i, j).imag();
    }
  }
  return c;
}

Matrix RungeKuttaPropagator::from_coordinates(const Eigen::VectorXd &coords, Eigen::Index dim)
{
  Matrix m(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
  {
    m(i, i) = coords(k++);
  }
  for (Eigen::Index i = 0; i < dim; ++i)
  {
    for (Eigen::Index j = i + 1; j < dim; ++j)
    {
      const double re = coords(k++);
      const double im = coords(k++);
      m(i, j) = Complex(re, im);
      m(j, i) = Complex(re, -im);
    }
  }
  return m;
}

Matrix RungeKuttaPropagator::apply(const Eigen::MatrixXd &map, const Matrix &op)
{
  const Matrix herm = 0.5 * (op + op.adjoint());
  const Matrix anti = (-0.5 * kI) * (op - op.adjoint());
  const Eigen::Index d = op.rows();
  return from_coordinates(map * to_coordinates(herm), d) + kI * from_coordinates(map * to_coordinates(anti), d);
}

DensityMatrix integrate(const MasterEquationProblem &problem, const DensityMatrix &rho0)
{
  check_initial_state(problem, rho0);
  const Eigen::Index d = static_cast<Eigen::Index>(problem.basis()->dimension());
  const Complex initial_trace = rho0.matrix.trace();
  if (problem.steps() == 0)
  {
    return rho0;
  }
  const RungeKuttaPropagator prop(problem);
  std::map<std::size_t, Eigen::MatrixXd> segment_maps;
  Eigen::VectorXd y = RungeKuttaPropagator::to_coordinates(rho0.matrix);
  std::size_t done = 0;
  for (int j = 1; j <= kCheckpoints; ++j)
  {
    const std::size_t target = problem.steps() * static_cast<std::size_t>(j) / kCheckpoints;
    const std::size_t segment = target - done;
    if (segment > 0)
    {
      auto it = segment_maps.find(segment);
      if (it == segment_maps.end())
      {
        it = segment_maps.emplace(segment, prop.power(segment)).first;
      }
      y = it->second * y;
      done = target;
    }
    check_checkpoint(RungeKuttaPropagator::from_coordinates(y, d), initial_trace, done);
  }
  DensityMatrix out{rho0.basis, RungeKuttaPropagator::from_coordinates(y, d)};
  out.validate();
  return out;
}

DensityMatrix integrate_reference(const MasterEquationProblem &problem, const DensityMatrix &rho0)
{
  check_initial_state(problem, rho0);
  const double h = problem.dt();
  const Complex initial_trace = rho0.matrix.trace();
  Matrix rho = rho0.matrix;
  const std::size_t every = std::max<std::size_t>(1, problem.steps() / kCheckpoints);
  for (std::size_t s = 0; s < problem.steps(); ++s)
  {
    const Matrix k1 = problem.rhs(rho);
    const Matrix k2 = problem.rhs(rho + 0.5 * h * k1);
    const Matrix k3 = problem.rhs(rho + 0.5 * h * k2);
    const Matrix k4 = problem.rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if ((s + 1) % every == 0)
    {
      check_checkpoint(rho, initial_trace, s + 1);
    }
  }
  DensityMatrix out{rho0.basis, rho};
  out.validate();
  return out;
}

double convergence_gap(const MasterEquationProblem &problem, const DensityMatrix &rho0)
{
  const auto coarse = integrate(problem, rho0);
  const auto fine = integrate(problem.refined(2), rho0);
  return fock::max_abs(coarse.matrix - fine.matrix);
}

double ProcessMatrix::fidelity(const dynamics::SubspaceMatrix &ideal_unitary) const
{
  Eigen::Matrix<Complex, 16, 1> phi;
  for (int i = 0; i < 4; ++i)
  {
    for (int k = 0; k < 4; ++k)
    {
      phi(i * 4 + k) = 0.5 * ideal_unitary(k, i);
    }
  }
  return (phi.adjoint() * choi * phi)(0, 0).real();
}

double ProcessMatrix::min_eigenvalue() const
{
  Eigen::SelfAdjointEigenSolver<ChoiMatrix> solver(choi, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

dynamics::SubspaceMatrix ProcessMatrix::vacuum_referenced_map() const
{
  dynamics::SubspaceMatrix m;
  for (int i = 0; i < 4; ++i)
  {
    for (int k = 0; k < 4; ++k)
    {
      m(k, i) = 4.0 * choi(i * 4 + k, 0);
    }
  }
  return m;
}

ProcessMatrix process_tomography(const MasterEquationProblem &problem)
{
  const BasisPtr &basis = problem.basis();
  const auto &states = dynamics::qubit_subspace();
  std::array<Eigen::Index, 4> idx{};
  for (std::size_t i = 0; i < 4; ++i)
  {
    const auto found = basis->find(states[i]);
    if (!found)
    {
      throw std::invalid_argument("process tomography needs a basis containing the qubit subspace");
    }
    idx[i] = static_cast<Eigen::Index>(*found);
  }
  const Eigen::Index d = static_cast<Eigen::Index>(basis->dimension());
  const RungeKuttaPropagator prop(problem);
  const Eigen::MatrixXd map = prop.power(problem.steps());

  ProcessMatrix pm;
  pm.choi.setZero();
  for (int i = 0; i < 4; ++i)
  {
    for (int j = 0; j < 4; ++j)
    {
      Matrix x = Matrix::Zero(d, d);
      x(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]) = 1.0;
      const Matrix y = RungeKuttaPropagator::apply(map, x);
      for (int k = 0; k < 4; ++k)
      {
        for (int l = 0; l < 4; ++l)
        {
          pm.choi(i * 4 + k, j * 4 + l) = 0.25 * y(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(l)]);
        }
      }
    }
  }
  return pm;
}

ProcessMatrix process_tomography(const dynamics::CoupledModePair &pair, const std::vector<LindbladChannel> &channels)
{
  return process_tomography(
    MasterEquationProblem::with_stable_step(dynamics::coupling_hamiltonian(pair), channels, pair.total_time,
                                             kGateOversample));
}

MasterEquationProblem coupled_absorption_problem(const dynamics::CoupledModePair &pair, double gamma2, double gamma1)
{
  if (!(gamma2 >= 0.0) || !(gamma1 >= 0.0) || !std::isfinite(gamma2) || !std::isfinite(gamma1))
  {
    throw std::invalid_argument("absorption and loss rates must be finite and nonnegative");
  }
  const auto a = fock::annihilation(pair.basis, 0);
  const auto b = fock::annihilation(pair.basis, 1);
  std::vector<LindbladChannel> channels;
  channels.push_back(make_channel(OperatorMatrix(pair.basis, a.matrix() * a.matrix()), gamma2));
  channels.push_back(make_channel(OperatorMatrix(pair.basis, b.matrix() * b.matrix()), gamma2));
  channels.push_back(make_channel(a, gamma1));
  channels.push_back(make_channel(b, gamma1));
  return MasterEquationProblem::with_stable_step(dynamics::coupling_hamiltonian(pair), std::move(channels),
                                                 pair.total_time, kGateOversample);
}

GammaPoint evaluate_gate(const MasterEquationProblem &problem, double kappa, double gamma2)
{
  const auto input = DensityMatrix::from_pure(fock::basis_state(problem.basis(), std::array{1, 1}));
  const auto rho = integrate(problem, input);
  const auto rho_fine = integrate(problem.refined(2), input);
  const double gap = fock::max_abs(rho.matrix - rho_fine.matrix);
  if (gap >= kConvergenceTolerance)
  {
    throw InvariantError("integrator convergence", "halving dt moved rho(T) by " + sci(gap));
  }
  const auto process = process_tomography(problem);
  const double lowest = process.min_eigenvalue();
  if (lowest < -fock::kPositivityTolerance)
  {
    throw InvariantError("complete positivity", "Choi eigenvalue " + sci(lowest));
  }
  GammaPoint p;
  p.gamma2_over_kappa = gamma2 / kappa;
  p.event_failure = 1.0 - rho.population(std::array{1, 1});
  p.gate_error = 1.0 - process.fidelity(dynamics::swap_prime_ideal());
  p.convergence_gap = gap;
  p.min_choi_eigenvalue = lowest;
  return p;
}

std::vector<GammaPoint> gamma_sweep(const dynamics::CoupledModePair &pair, const std::vector<double> &gamma2_values,
                                    const GammaSweepOptions &options, Execution exec)
{
  for (double g : gamma2_values)
  {
    if (!(g >= 0.0) || !std::isfinite(g))
    {
      throw std::invalid_argument("two-photon absorption rates must be finite and nonnegative");
    }
  }
  if (!(options.gamma1 >= 0.0) || !(options.gamma1_ratio >= 0.0))
  {
    throw std::invalid_argument("single-photon loss settings must be nonnegative");
  }
  std::vector<GammaPoint> points(gamma2_values.size());
  parallel_for(gamma2_values.size(), exec, [&](std::size_t i) {
    const double g2 = gamma2_values[i];
    const double g1 = options.gamma1 + options.gamma1_ratio * g2;
    points[i] = evaluate_gate(coupled_absorption_problem(pair, g2, g1), pair.kappa, g2);
  });
  return points;
}

ExperimentCurve gamma_curve(const std::vector<GammaPoint> &points)
{
  ExperimentCurve curve("zeno-tpa", {"gamma2_over_kappa", "event_failure", "gate_error"});
  for (const auto &p : points)
  {
    curve.add_row({p.gamma2_over_kappa, p.event_failure, p.gate_error});
  }
  curve.set_plot(PlotSpec{"gamma2_over_kappa", {"event_failure", "gate_error"}, true, true,
                          "Gate error vs two-photon absorption rate", "gamma2 / kappa", "error probability"});
  return curve;
}

ExperimentCurve error_vs_gamma(const dynamics::CoupledModePair &pair, const std::vector<double> &gamma2_values,
                               const GammaSweepOptions &options, Execution exec)
{
  return gamma_curve(gamma_sweep(pair, gamma2_values, options, exec));
}

std::vector<double> log_grid(double lo, double hi, int n)
{
  if (!(lo > 0.0) || !(hi >= lo) || n < 1 || (n == 1 && hi != lo))
  {
    throw std::invalid_argument("log grid needs 0 < lo <= hi and n >= 2 (or n = 1 with lo = hi)");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < n; ++k)
  {
    out[static_cast<std::size_t>(k)] = n == 1 ? lo : std::pow(10.0, a + (b - a) * k / (n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace zeno::lindblad
