// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/zeno_gate.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno::dynamics
{

CoupledModePair make_coupled_pair(double kappa, double kappa_t)
{
  if (!(kappa > 0.0) || !std::isfinite(kappa))
  {
    throw std::invalid_argument("coupling rate kappa must be positive");
  }
  if (!(kappa_t >= 0.0) || !std::isfinite(kappa_t))
  {
    throw std::invalid_argument("kappa * T must be finite and nonnegative");
  }
  return CoupledModePair{kappa, kappa_t / kappa, fock::enumerate_basis(2, 2)};
}

OperatorMatrix coupling_hamiltonian(const CoupledModePair &pair)
{
  const auto a = fock::annihilation(pair.basis, 0).matrix();
  const auto b = fock::annihilation(pair.basis, 1).matrix();
  // b^dagger a rather than a b^dagger: the truncated product a b^dagger loses the top shell.
  Eigen::MatrixXcd h = pair.kappa * (a.adjoint() * b + b.adjoint() * a);
  return OperatorMatrix(pair.basis, std::move(h), fock::OperatorKind::hermitian);
}

const std::array<fock::Occupation, 4> &qubit_subspace()
{
  static const std::array<fock::Occupation, 4> states{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  return states;
}

OperatorMatrix no_failure_projector(const BasisPtr &basis)
{
  return fock::projector_onto(basis, [](const fock::Occupation &occ) {
    for (int n : occ)
    {
      if (n >= 2)
      {
        return false;
      }
    }
    return true;
  });
}

ZenoSchedule make_schedule(const CoupledModePair &pair, int n_measurements)
{
  if (n_measurements < 1)
  {
    throw std::invalid_argument("a Zeno schedule needs at least one measurement");
  }
  return ZenoSchedule{n_measurements, no_failure_projector(pair.basis)};
}

ZenoRunResult zeno_run(const CoupledModePair &pair, const ZenoSchedule &schedule, const StateVector &input)
{
  if (schedule.n_measurements < 1)
  {
    throw std::invalid_argument("a Zeno schedule needs at least one measurement");
  }
  if (input.basis->num_modes() != 2 || input.basis->max_total() != pair.basis->max_total())
  {
    throw std::invalid_argument("zeno_run input must live on the coupled pair's two-mode basis");
  }
  const auto step = fock::propagator(coupling_hamiltonian(pair), pair.total_time / schedule.n_measurements);
  double survival = 1.0;
  StateVector state = input;
  for (int k = 0; k < schedule.n_measurements; ++k)
  {
    state = fock::apply(step, state);
    auto [p, projected] = fock::project(state, schedule.projector);
    survival *= p;
    state = std::move(projected);
    if (survival == 0.0)
    {
      break;
    }
  }
  return ZenoRunResult{survival, std::move(state)};
}

ZenoErrorPoint zeno_error_point(const CoupledModePair &pair, int n_measurements)
{
  const auto input = fock::basis_state(pair.basis, std::array{1, 1});
  const auto run = zeno_run(pair, make_schedule(pair, n_measurements), input);
  const Complex overlap = run.state.amplitude(std::array{1, 1});
  const double phase = run.survival_probability > 0.0 ? std::arg(overlap) : 0.0;
  const double half = std::cos(0.5 * phase);
  const double fidelity = run.survival_probability * std::norm(overlap) * half * half;
  return ZenoErrorPoint{n_measurements, 1.0 - fidelity, 1.0 - run.survival_probability, phase, n_measurements <= 2};
}

ExperimentCurve error_vs_n(const CoupledModePair &pair, const std::vector<int> &n_values, Execution exec)
{
  if (n_values.empty())
  {
    throw std::invalid_argument("error_vs_n needs at least one N value");
  }
  for (int n : n_values)
  {
    if (n < 1)
    {
      throw std::invalid_argument("measurement counts must be >= 1");
    }
  }
  std::vector<ZenoErrorPoint> points(n_values.size());
  parallel_for(n_values.size(), exec, [&](std::size_t i) { points[i] = zeno_error_point(pair, n_values[i]); });

  ExperimentCurve curve("zeno-n", {"n", "gate_error", "failure_probability", "phase_11", "degenerate"});
  for (const auto &p : points)
  {
    curve.add_row({static_cast<double>(p.n), p.gate_error, p.failure_probability, p.phase_11, p.degenerate ? 1.0 : 0.0});
  }
  curve.set_plot(PlotSpec{"n", {"gate_error", "failure_probability"}, true, true,
                          "Gate error vs number of measurements", "measurements N", "error probability"});
  return curve;
}

SubspaceMatrix swap_prime_ideal()
{
  SubspaceMatrix u = SubspaceMatrix::Zero();
  u(0, 0) = 1.0;
  u(2, 1) = -fock::kI;
  u(1, 2) = -fock::kI;
  u(3, 3) = 1.0;
  return u;
}

double swap_prime_distance(const SubspaceMatrix &actual)
{
  return 1.0 - std::norm((swap_prime_ideal().adjoint() * actual).trace()) / 16.0;
}

double swap_prime_distance(const Eigen::MatrixXcd &actual)
{
  if (actual.rows() != 4 || actual.cols() != 4)
  {
    throw std::invalid_argument("SWAP' distance needs a 4x4 map on the qubit subspace");
  }
  return swap_prime_distance(SubspaceMatrix(actual));
}

SubspaceMatrix subspace_block(const OperatorMatrix &op)
{
  const auto &states = qubit_subspace();
  SubspaceMatrix m;
  for (int r = 0; r < 4; ++r)
  {
    for (int c = 0; c < 4; ++c)
    {
      m(r, c) = op.matrix()(static_cast<Eigen::Index>(op.basis()->index_of(states[static_cast<std::size_t>(r)])),
                            static_cast<Eigen::Index>(op.basis()->index_of(states[static_cast<std::size_t>(c)])));
    }
  }
  return m;
}

}  // namespace zeno::dynamics
