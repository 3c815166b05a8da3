// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_FOCK_HPP
#define ZENO_FOCK_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/parallel.hpp"

namespace zeno::fock
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Occupation = std::vector<int>;

inline constexpr Complex kI{0.0, 1.0};

// Truncated multimode boson basis: every occupation vector (n_1..n_M) with
// sum n_i <= max_total, in lexicographic order.
class FockBasis
{
public:
  FockBasis(int num_modes, int max_total);

  int num_modes() const { return num_modes_; }
  int max_total() const { return max_total_; }
  std::size_t dimension() const { return states_.size(); }

  const Occupation &occupation(std::size_t index) const;
  std::span<const Occupation> states() const { return states_; }

  std::optional<std::size_t> find(std::span<const int> occupation) const;
  // Throws std::out_of_range for occupations outside the basis.
  std::size_t index_of(std::span<const int> occupation) const;

  int total_photons(std::size_t index) const;

private:
  int num_modes_;
  int max_total_;
  std::vector<Occupation> states_;
  std::map<Occupation, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr enumerate_basis(int num_modes, int max_total);

struct StateVector
{
  BasisPtr basis;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
  Complex amplitude(std::span<const int> occupation) const;
};

StateVector basis_state(const BasisPtr &basis, std::span<const int> occupation);
StateVector zero_state(const BasisPtr &basis);

enum class OperatorKind
{
  hermitian,
  unitary,
  general
};

std::string to_string(OperatorKind kind);

// Dense operator on a Fock basis. Construction checks the kind tag against the
// matrix (hermitian: A = A^dagger, unitary: U^dagger U = I, both to 1e-10).
class OperatorMatrix
{
public:
  OperatorMatrix(BasisPtr basis, Matrix matrix, OperatorKind kind = OperatorKind::general);

  const BasisPtr &basis() const { return basis_; }
  const Matrix &matrix() const { return matrix_; }
  OperatorKind kind() const { return kind_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

  OperatorMatrix adjoint() const;

private:
  BasisPtr basis_;
  Matrix matrix_;
  OperatorKind kind_;
};

struct DensityMatrix
{
  BasisPtr basis;
  Matrix matrix;

  static DensityMatrix from_pure(const StateVector &state);

  Complex trace() const { return matrix.trace(); }
  double population(std::span<const int> occupation) const;
  // Throws InvariantError naming the first violated invariant: hermiticity
  // (1e-10), trace in [-1e-10, 1 + 1e-10], eigenvalues >= -1e-9.
  void validate() const;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kProjectorTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;

double max_abs(const Matrix &m);
bool is_hermitian(const Matrix &m, double tol = kHermitianTolerance);
bool is_unitary(const Matrix &m, double tol = kUnitaryTolerance);

// Mode operators. Creation maps components pushed above max_total to zero.
OperatorMatrix annihilation(const BasisPtr &basis, int mode);
OperatorMatrix creation(const BasisPtr &basis, int mode);
OperatorMatrix number_operator(const BasisPtr &basis, int mode);
OperatorMatrix identity(const BasisPtr &basis);

// Orthogonal projector onto the span of the basis states accepted by keep.
template <class Predicate>
OperatorMatrix projector_onto(const BasisPtr &basis, Predicate keep)
{
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
  {
    if (keep(basis->occupation(static_cast<std::size_t>(i))))
    {
      p(i, i) = 1.0;
    }
  }
  return OperatorMatrix(basis, std::move(p), OperatorKind::hermitian);
}

// exp(-i H t) via Hermitian eigendecomposition.
OperatorMatrix propagator(const OperatorMatrix &hamiltonian, double t);
StateVector evolve_unitary(const StateVector &state, const OperatorMatrix &hamiltonian, double t);

struct ProjectionResult
{
  double probability;
  StateVector state;
};

inline constexpr double kNullProbability = 1e-14;

ProjectionResult project(const StateVector &state, const OperatorMatrix &projector);

StateVector apply(const OperatorMatrix &op, const StateVector &state);

// Lifts a single-particle mode transformation (columns: image of each mode's
// creation operator, a_i^dagger -> sum_j U(j, i) a_j^dagger) to the Fock space.
// Photon number is conserved, so the lift is exact on the truncated basis.
OperatorMatrix lift_mode_unitary(const BasisPtr &basis, const Matrix &mode_unitary,
                                 Execution exec = Execution::parallel);

}  // namespace zeno::fock

#endif  // ZENO_FOCK_HPP
