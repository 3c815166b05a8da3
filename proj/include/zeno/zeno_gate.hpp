// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_ZENO_GATE_HPP
#define ZENO_ZENO_GATE_HPP

#include <array>
#include <numbers>
#include <vector>

#include "zeno/curve.hpp"
#include "zeno/fock.hpp"
#include "zeno/parallel.hpp"

namespace zeno::dynamics
{

using fock::BasisPtr;
using fock::Complex;
using fock::OperatorMatrix;
using fock::StateVector;

using SubspaceMatrix = Eigen::Matrix4cd;

// Two evanescently coupled modes a, b with H = kappa (a^dagger b + a b^dagger),
// on the two-mode basis truncated at two photons.
struct CoupledModePair
{
  double kappa;
  double total_time;
  BasisPtr basis;

  double kappa_t() const { return kappa * total_time; }
};

// kappa_t = pi/2 is the full single-photon transfer length.
CoupledModePair make_coupled_pair(double kappa, double kappa_t = std::numbers::pi / 2.0);

OperatorMatrix coupling_hamiltonian(const CoupledModePair &pair);

// Occupations spanning the two-qubit subspace, in order |0,0>, |0,1>, |1,0>, |1,1>.
const std::array<fock::Occupation, 4> &qubit_subspace();

// Complement of span{|2,0>, |0,2>}: identity on states with at most one photon per mode.
OperatorMatrix no_failure_projector(const BasisPtr &basis);

struct ZenoSchedule
{
  int n_measurements;
  OperatorMatrix projector;
};

ZenoSchedule make_schedule(const CoupledModePair &pair, int n_measurements);

struct ZenoRunResult
{
  double survival_probability;
  StateVector state;  // renormalized; zero vector if survival is 0
};

// N rounds of (evolve for T/N, project onto no-failure subspace).
ZenoRunResult zeno_run(const CoupledModePair &pair, const ZenoSchedule &schedule, const StateVector &input);

// Phase-sensitive gate error for input |1,1>:
//   1 - survival * |<1,1|psi>|^2 * cos^2(phi / 2),  phi = arg <1,1|psi>.
// The vacuum is an eigenstate of the coupling with energy 0, so phi is a
// physical phase relative to |0,0>, and the ideal gate leaves |1,1> at phi = 0.
struct ZenoErrorPoint
{
  int n;
  double gate_error;
  double failure_probability;  // 1 - survival: photons found in the same mode
  double phase_11;
  bool degenerate;  // N <= 2
};

ZenoErrorPoint zeno_error_point(const CoupledModePair &pair, int n_measurements);

// Rows (n, gate_error, failure_probability, phase_11, degenerate) in input order.
ExperimentCurve error_vs_n(const CoupledModePair &pair, const std::vector<int> &n_values,
                           Execution exec = Execution::parallel);

// |0,0> -> |0,0>, |0,1> -> -i|1,0>, |1,0> -> -i|0,1>, |1,1> -> |1,1>.
SubspaceMatrix swap_prime_ideal();

// 1 - |Tr(U_ideal^dagger M)|^2 / 16.
double swap_prime_distance(const SubspaceMatrix &actual);
double swap_prime_distance(const Eigen::MatrixXcd &actual);

// Restriction of an operator on the two-mode basis to the qubit subspace.
SubspaceMatrix subspace_block(const OperatorMatrix &op);

}  // namespace zeno::dynamics

#endif  // ZENO_ZENO_GATE_HPP
