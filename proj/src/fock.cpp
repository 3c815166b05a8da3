// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zeno/error.hpp"

namespace zeno::fock
{

namespace
{

void enumerate_recursive(int mode, int remaining, Occupation &current, std::vector<Occupation> &out)
{
  if (mode == static_cast<int>(current.size()))
  {
    out.push_back(current);
    return;
  }
  for (int n = 0; n <= remaining; ++n)
  {
    current[static_cast<std::size_t>(mode)] = n;
    enumerate_recursive(mode + 1, remaining - n, current, out);
  }
  current[static_cast<std::size_t>(mode)] = 0;
}

void require_same_basis(const BasisPtr &a, const BasisPtr &b, const char *what)
{
  if (a->num_modes() != b->num_modes() || a->max_total() != b->max_total())
  {
    throw std::invalid_argument(std::string(what) + ": operands live on different bases");
  }
}

void check_mode(const BasisPtr &basis, int mode)
{
  if (mode < 0 || mode >= basis->num_modes())
  {
    throw std::invalid_argument("mode index " + std::to_string(mode) + " outside [0, " +
                                std::to_string(basis->num_modes()) + ")");
  }
}

}  // namespace

FockBasis::FockBasis(int num_modes, int max_total) : num_modes_(num_modes), max_total_(max_total)
{
  if (num_modes < 1)
  {
    throw std::invalid_argument("FockBasis needs at least one mode");
  }
  if (max_total < 0)
  {
    throw std::invalid_argument("FockBasis truncation must be nonnegative");
  }
  Occupation current(static_cast<std::size_t>(num_modes), 0);
  enumerate_recursive(0, max_total, current, states_);
  for (std::size_t i = 0; i < states_.size(); ++i)
  {
    index_.emplace(states_[i], i);
  }
}

const Occupation &FockBasis::occupation(std::size_t index) const
{
  return states_.at(index);
}

std::optional<std::size_t> FockBasis::find(std::span<const int> occupation) const
{
  if (occupation.size() != static_cast<std::size_t>(num_modes_))
  {
    return std::nullopt;
  }
  auto it = index_.find(Occupation(occupation.begin(), occupation.end()));
  if (it == index_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

std::size_t FockBasis::index_of(std::span<const int> occupation) const
{
  if (auto idx = find(occupation))
  {
    return *idx;
  }
  throw std::out_of_range("occupation vector is not part of the basis");
}

int FockBasis::total_photons(std::size_t index) const
{
  const auto &occ = occupation(index);
  return std::accumulate(occ.begin(), occ.end(), 0);
}

BasisPtr enumerate_basis(int num_modes, int max_total)
{
  return std::make_shared<const FockBasis>(num_modes, max_total);
}

Complex StateVector::amplitude(std::span<const int> occupation) const
{
  return amplitudes(static_cast<Eigen::Index>(basis->index_of(occupation)));
}

StateVector basis_state(const BasisPtr &basis, std::span<const int> occupation)
{
  StateVector s = zero_state(basis);
  s.amplitudes(static_cast<Eigen::Index>(basis->index_of(occupation))) = 1.0;
  return s;
}

StateVector zero_state(const BasisPtr &basis)
{
  return StateVector{basis, Vector::Zero(static_cast<Eigen::Index>(basis->dimension()))};
}

std::string to_string(OperatorKind kind)
{
  switch (kind)
  {
  case OperatorKind::hermitian:
    return "hermitian";
  case OperatorKind::unitary:
    return "unitary";
  case OperatorKind::general:
    return "general";
  }
  return "unknown";
}

double max_abs(const Matrix &m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix &m, double tol)
{
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix &m, double tol)
{
  if (m.rows() != m.cols())
  {
    return false;
  }
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

OperatorMatrix::OperatorMatrix(BasisPtr basis, Matrix matrix, OperatorKind kind)
  : basis_(std::move(basis)), matrix_(std::move(matrix)), kind_(kind)
{
  const auto dim = static_cast<Eigen::Index>(basis_->dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim)
  {
    throw std::invalid_argument("operator dimension does not match its basis");
  }
  if (kind_ == OperatorKind::hermitian && !is_hermitian(matrix_))
  {
    throw InvariantError("hermiticity", "operator tagged hermitian deviates from its adjoint by " +
                                            std::to_string(max_abs(matrix_ - matrix_.adjoint())));
  }
  if (kind_ == OperatorKind::unitary && !is_unitary(matrix_))
  {
    throw InvariantError("unitarity", "operator tagged unitary fails U^dagger U = I");
  }
}

OperatorMatrix OperatorMatrix::adjoint() const
{
  return OperatorMatrix(basis_, matrix_.adjoint(), kind_);
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state)
{
  return DensityMatrix{state.basis, state.amplitudes * state.amplitudes.adjoint()};
}

double DensityMatrix::population(std::span<const int> occupation) const
{
  const auto i = static_cast<Eigen::Index>(basis->index_of(occupation));
  return matrix(i, i).real();
}

void DensityMatrix::validate() const
{
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  if (matrix.rows() != dim || matrix.cols() != dim)
  {
    throw std::invalid_argument("density matrix dimension does not match its basis");
  }
  const double herm = max_abs(matrix - matrix.adjoint());
  if (herm > kHermitianTolerance)
  {
    throw InvariantError("density-matrix hermiticity", "max |rho - rho^dagger| = " + std::to_string(herm));
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr.imag()) > kHermitianTolerance || tr.real() < -1e-10 || tr.real() > 1.0 + 1e-10)
  {
    std::ostringstream os;
    os.precision(17);
    os << "trace = " << tr;
    throw InvariantError("density-matrix trace", os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -kPositivityTolerance)
  {
    throw InvariantError("density-matrix positivity", "lowest eigenvalue " + std::to_string(lowest));
  }
}

OperatorMatrix annihilation(const BasisPtr &basis, int mode)
{
  check_mode(basis, mode);
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  Matrix a = Matrix::Zero(dim, dim);
  Occupation lowered;
  for (Eigen::Index col = 0; col < dim; ++col)
  {
    const auto &occ = basis->occupation(static_cast<std::size_t>(col));
    const int n = occ[static_cast<std::size_t>(mode)];
    if (n == 0)
    {
      continue;
    }
    lowered = occ;
    lowered[static_cast<std::size_t>(mode)] = n - 1;
    const auto row = static_cast<Eigen::Index>(basis->index_of(lowered));
    a(row, col) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(basis, std::move(a));
}

OperatorMatrix creation(const BasisPtr &basis, int mode)
{
  return annihilation(basis, mode).adjoint();
}

OperatorMatrix number_operator(const BasisPtr &basis, int mode)
{
  check_mode(basis, mode);
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  Matrix n = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
  {
    n(i, i) = basis->occupation(static_cast<std::size_t>(i))[static_cast<std::size_t>(mode)];
  }
  return OperatorMatrix(basis, std::move(n), OperatorKind::hermitian);
}

OperatorMatrix identity(const BasisPtr &basis)
{
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  return OperatorMatrix(basis, Matrix::Identity(dim, dim), OperatorKind::unitary);
}

OperatorMatrix propagator(const OperatorMatrix &hamiltonian, double t)
{
  if (hamiltonian.kind() != OperatorKind::hermitian)
  {
    throw std::invalid_argument("propagator requires a Hamiltonian tagged hermitian");
  }
  if (!std::isfinite(t))
  {
    throw std::invalid_argument("evolution time must be finite");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian.matrix());
  if (solver.info() != Eigen::Success)
  {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  const Eigen::VectorXd &energies = solver.eigenvalues();
  const Matrix &vectors = solver.eigenvectors();
  Vector phases(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k)
  {
    phases(k) = std::exp(-kI * energies(k) * t);
  }
  Matrix u = vectors * phases.asDiagonal() * vectors.adjoint();
  return OperatorMatrix(hamiltonian.basis(), std::move(u), OperatorKind::unitary);
}

StateVector evolve_unitary(const StateVector &state, const OperatorMatrix &hamiltonian, double t)
{
  require_same_basis(state.basis, hamiltonian.basis(), "evolve_unitary");
  const auto u = propagator(hamiltonian, t);
  return StateVector{state.basis, u.matrix() * state.amplitudes};
}

StateVector apply(const OperatorMatrix &op, const StateVector &state)
{
  require_same_basis(state.basis, op.basis(), "apply");
  return StateVector{state.basis, op.matrix() * state.amplitudes};
}

namespace
{

// Occupation-number projectors are diagonal with 0/1 entries; this O(n^2) check
// spares them the O(n^3) idempotency test.
bool is_diagonal_projector(const Matrix &p)
{
  for (Eigen::Index j = 0; j < p.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < p.rows(); ++i)
    {
      const Complex v = p(i, j);
      const bool ok = i == j ? (v == Complex{0.0} || v == Complex{1.0}) : v == Complex{0.0};
      if (!ok)
      {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

ProjectionResult project(const StateVector &state, const OperatorMatrix &projector)
{
  require_same_basis(state.basis, projector.basis(), "project");
  const Matrix &p = projector.matrix();
  if (!is_diagonal_projector(p) && (!is_hermitian(p, kProjectorTolerance) || max_abs(p * p - p) > kProjectorTolerance))
  {
    throw std::invalid_argument("project requires an orthogonal projector (P^2 = P = P^dagger)");
  }
  Vector projected = p * state.amplitudes;
  double probability = std::clamp(projected.squaredNorm(), 0.0, 1.0);
  if (probability < kNullProbability)
  {
    return ProjectionResult{0.0, zero_state(state.basis)};
  }
  projected /= std::sqrt(projected.squaredNorm());
  return ProjectionResult{probability, StateVector{state.basis, std::move(projected)}};
}

OperatorMatrix lift_mode_unitary(const BasisPtr &basis, const Matrix &mode_unitary, Execution exec)
{
  const int modes = basis->num_modes();
  if (mode_unitary.rows() != modes || mode_unitary.cols() != modes)
  {
    throw std::invalid_argument("mode transformation must be num_modes x num_modes");
  }
  if (!is_unitary(mode_unitary))
  {
    throw InvariantError("unitarity", "mode transformation is not unitary");
  }
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  Matrix lifted = Matrix::Zero(dim, dim);

  // Column k is prod_i (sum_j U(j,i) a_j^dagger)^{n_i} |0> / sqrt(prod n_i!),
  // expanded one creation operator at a time.
  parallel_for(basis->dimension(), exec, [&](std::size_t col) {
    const Occupation &target = basis->occupation(col);
    std::map<Occupation, Complex> terms{{Occupation(static_cast<std::size_t>(modes), 0), Complex{1.0}}};
    double factorials = 1.0;
    for (int i = 0; i < modes; ++i)
    {
      for (int rep = 0; rep < target[static_cast<std::size_t>(i)]; ++rep)
      {
        factorials *= rep + 1;
        std::map<Occupation, Complex> next;
        for (const auto &[occ, amp] : terms)
        {
          for (int j = 0; j < modes; ++j)
          {
            const Complex u = mode_unitary(j, i);
            if (u == Complex{0.0})
            {
              continue;
            }
            Occupation raised = occ;
            const int n = raised[static_cast<std::size_t>(j)]++;
            next[raised] += amp * u * std::sqrt(static_cast<double>(n + 1));
          }
        }
        terms = std::move(next);
      }
    }
    const double norm = 1.0 / std::sqrt(factorials);
    for (const auto &[occ, amp] : terms)
    {
      const auto row = static_cast<Eigen::Index>(basis->index_of(occ));
      lifted(row, static_cast<Eigen::Index>(col)) = amp * norm;
    }
  });
  return OperatorMatrix(basis, std::move(lifted), OperatorKind::unitary);
}

}  // namespace zeno::fock
