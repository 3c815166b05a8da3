// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_LINDBLAD_HPP
#define ZENO_LINDBLAD_HPP

#include <cstddef>
#include <vector>

#include "zeno/curve.hpp"
#include "zeno/fock.hpp"
#include "zeno/parallel.hpp"
#include "zeno/zeno_gate.hpp"

namespace zeno::lindblad
{

using fock::BasisPtr;
using fock::DensityMatrix;
using fock::Matrix;
using fock::OperatorMatrix;

struct LindbladChannel
{
  OperatorMatrix jump;
  double rate;
};

LindbladChannel make_channel(OperatorMatrix jump, double rate);

inline constexpr double kStabilityFactor = 0.01;

// d rho/dt = -i[H, rho] + sum_k rate_k (L rho L^dagger - {L^dagger L, rho}/2),
// integrated over [0, t_final] in steps of dt with classical RK4.
class MasterEquationProblem
{
public:
  // dt must divide t_final and satisfy the stability bound.
  MasterEquationProblem(OperatorMatrix hamiltonian, std::vector<LindbladChannel> channels, double t_final, double dt);

  // Largest step allowed: 0.01 / max(||H||, max_k rate_k ||L_k^dagger L_k||).
  static double max_stable_step(const OperatorMatrix &hamiltonian, const std::vector<LindbladChannel> &channels);
  // Picks the largest dt that divides t_final and is at most bound / oversample.
  static MasterEquationProblem with_stable_step(OperatorMatrix hamiltonian, std::vector<LindbladChannel> channels,
                                                double t_final, int oversample = 1);

  const OperatorMatrix &hamiltonian() const { return hamiltonian_; }
  const std::vector<LindbladChannel> &channels() const { return channels_; }
  const BasisPtr &basis() const { return hamiltonian_.basis(); }
  double t_final() const { return t_final_; }
  double dt() const { return dt_; }
  std::size_t steps() const { return steps_; }

  // Same problem with dt / factor.
  MasterEquationProblem refined(int factor = 2) const;

  // Right-hand side of the master equation, evaluated directly.
  Matrix rhs(const Matrix &rho) const;

private:
  OperatorMatrix hamiltonian_;
  std::vector<LindbladChannel> channels_;
  std::vector<Matrix> damping_;  // rate_k L_k^dagger L_k / 2
  double t_final_;
  double dt_;
  std::size_t steps_;
};

// The Lindbladian in real coordinates of Hermitian matrices (diagonal entries,
// then Re/Im of the upper triangle), and the fixed-step RK4 map it generates.
// For a linear autonomous equation one RK4 step is exactly
//   S = I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24,
// so n steps are S^n, evaluated by repeated squaring.
class RungeKuttaPropagator
{
public:
  explicit RungeKuttaPropagator(const MasterEquationProblem &problem);

  const Eigen::MatrixXd &generator() const { return generator_; }
  Eigen::MatrixXd step_map() const;
  const Eigen::MatrixXd &step_increment() const { return increment_; }

  // Map for `steps` consecutive RK4 steps.
  Eigen::MatrixXd power(std::size_t steps) const;

  // Applies a real-coordinate map to an arbitrary (not necessarily Hermitian)
  // operator by splitting it into Hermitian and anti-Hermitian parts.
  static Matrix apply(const Eigen::MatrixXd &map, const Matrix &op);

  static Eigen::VectorXd to_coordinates(const Matrix &hermitian);
  static Matrix from_coordinates(const Eigen::VectorXd &coords, Eigen::Index dim);

private:
  Eigen::Index dim_;
  Eigen::MatrixXd generator_;
  Eigen::MatrixXd increment_;  // S - I
};

inline constexpr int kCheckpoints = 10;
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kConvergenceTolerance = 1e-8;

// Fast path: propagator powers, with trace / positivity / hermiticity checked at
// kCheckpoints evenly spaced checkpoints. Throws InvariantError on violation.
DensityMatrix integrate(const MasterEquationProblem &problem, const DensityMatrix &rho0);

// Serial reference: step-by-step RK4 on the complex density matrix with the
// direct right-hand side, re-symmetrized after every step.
DensityMatrix integrate_reference(const MasterEquationProblem &problem, const DensityMatrix &rho0);

// Max-element change of rho(T) when dt is halved.
double convergence_gap(const MasterEquationProblem &problem, const DensityMatrix &rho0);

using ChoiMatrix = Eigen::Matrix<fock::Complex, 16, 16>;

// Choi state of the simulated channel restricted to the qubit subspace:
//   choi = (1/4) sum_{ij} |i><j| (x) P E(|i><j|) P,
// rows/cols indexed input * 4 + output. Trace <= 1.
struct ProcessMatrix
{
  ChoiMatrix choi;

  double fidelity(const dynamics::SubspaceMatrix &ideal_unitary) const;
  double trace() const { return choi.trace().real(); }
  double min_eigenvalue() const;
  // M(k, i) = <k| E(|i><0,0|) |0,0>: the conditional amplitude of i -> k with
  // the phase referenced to the vacuum.
  dynamics::SubspaceMatrix vacuum_referenced_map() const;
};

ProcessMatrix process_tomography(const MasterEquationProblem &problem);
ProcessMatrix process_tomography(const dynamics::CoupledModePair &pair, const std::vector<LindbladChannel> &channels);

// Step oversampling for the gate problems. At the bare bound, RK4 truncation
// pushes near-pure states about 1e-9 below zero for gamma2 ~ kappa.
inline constexpr int kGateOversample = 4;

// Coupled-mode gate with two-photon absorption (jumps a^2, b^2 at gamma2) and
// single-photon loss (jumps a, b at gamma1) over the pair's gate time.
MasterEquationProblem coupled_absorption_problem(const dynamics::CoupledModePair &pair, double gamma2,
                                                 double gamma1 = 0.0);

struct GammaPoint
{
  double gamma2_over_kappa;
  double event_failure;  // 1 - <1,1|rho(T)|1,1> for input |1,1>
  double gate_error;     // 1 - process fidelity against SWAP'
  double convergence_gap;
  double min_choi_eigenvalue;
};

// Evaluates one prepared problem: integrate, half-step check, tomography.
GammaPoint evaluate_gate(const MasterEquationProblem &problem, double kappa, double gamma2);

struct GammaSweepOptions
{
  double gamma1 = 0.0;
  // When nonzero, gamma1 = gamma1 + gamma1_ratio * gamma2 at each point.
  double gamma1_ratio = 0.0;
};

std::vector<GammaPoint> gamma_sweep(const dynamics::CoupledModePair &pair, const std::vector<double> &gamma2_values,
                                    const GammaSweepOptions &options = {}, Execution exec = Execution::parallel);

// Rows (gamma2_over_kappa, event_failure, gate_error).
ExperimentCurve error_vs_gamma(const dynamics::CoupledModePair &pair, const std::vector<double> &gamma2_values,
                               const GammaSweepOptions &options = {}, Execution exec = Execution::parallel);

ExperimentCurve gamma_curve(const std::vector<GammaPoint> &points);

// n points, log-spaced from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace zeno::lindblad

#endif  // ZENO_LINDBLAD_HPP
