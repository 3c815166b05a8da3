// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "zeno/error.hpp"
#include "zeno/lindblad.hpp"

namespace zeno::lindblad
{
namespace
{

using fock::Complex;
constexpr double kPi = std::numbers::pi;

DensityMatrix pure(const BasisPtr &basis, std::array<int, 2> occ)
{
  return DensityMatrix::from_pure(fock::basis_state(basis, occ));
}

TEST(MasterEquationProblem, StabilityBound)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto h = dynamics::coupling_hamiltonian(pair);
  // ||H|| = 2 kappa on the two-photon shell, ||a^dagger^2 a^2|| = 2.
  EXPECT_NEAR(MasterEquationProblem::max_stable_step(h, {}), 0.01 / 2.0, 1e-15);
  const auto a = fock::annihilation(pair.basis, 0).matrix();
  std::vector<LindbladChannel> ch{make_channel(OperatorMatrix(pair.basis, a * a), 50.0)};
  EXPECT_NEAR(MasterEquationProblem::max_stable_step(h, ch), 0.01 / 100.0, 1e-15);

  const auto p = MasterEquationProblem::with_stable_step(h, ch, 1.0);
  EXPECT_LE(p.dt(), 1e-4 * (1 + 1e-12));
  EXPECT_NEAR(p.dt() * static_cast<double>(p.steps()), 1.0, 1e-12);
}

TEST(MasterEquationProblem, RejectsInvalidSetups)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto h = dynamics::coupling_hamiltonian(pair);
  EXPECT_THROW(MasterEquationProblem(h, {}, 1.0, 0.003), std::invalid_argument);   // does not divide
  EXPECT_THROW(MasterEquationProblem(h, {}, 1.0, 0.01), std::invalid_argument);    // above the bound
  EXPECT_THROW(MasterEquationProblem(h, {}, -1.0, 0.001), std::invalid_argument);
  EXPECT_THROW(MasterEquationProblem(OperatorMatrix(pair.basis, fock::annihilation(pair.basis, 0).matrix()), {}, 1.0,
                                     0.001),
               std::invalid_argument);
  EXPECT_THROW(make_channel(fock::annihilation(pair.basis, 0), -0.1), std::invalid_argument);
  EXPECT_THROW(coupled_absorption_problem(pair, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(MasterEquationProblem(h, {}, 1.0, 0.005));
  EXPECT_EQ(MasterEquationProblem(h, {}, 0.0, 0.0).steps(), 0U);
}

TEST(Integrate, RejectsNonDensityInitialState)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto problem = coupled_absorption_problem(pair, 1.0);
  DensityMatrix rho = pure(pair.basis, {1, 1});
  rho.matrix *= 2.0;
  EXPECT_THROW(integrate(problem, rho), std::invalid_argument);
  EXPECT_THROW(integrate(problem, pure(fock::enumerate_basis(2, 3), {1, 1})), std::invalid_argument);
}

TEST(Integrate, UnitaryLimitMatchesPropagator)
{
  std::mt19937 rng(11);
  const auto pair = dynamics::make_coupled_pair(1.0, 1.234);
  const auto h = dynamics::coupling_hamiltonian(pair);
  const auto problem = MasterEquationProblem::with_stable_step(h, {}, pair.total_time);
  const fock::StateVector psi{pair.basis, zeno::testing::random_state(rng, 6)};
  const auto rho = integrate(problem, DensityMatrix::from_pure(psi));
  const auto u = fock::propagator(h, pair.total_time).matrix();
  const fock::Matrix expected = u * DensityMatrix::from_pure(psi).matrix * u.adjoint();
  const double coarse = fock::max_abs(rho.matrix - expected);
  EXPECT_LT(coarse, kConvergenceTolerance);
  // Fourth order: halving the step cuts the error by about 16.
  const double fine = fock::max_abs(integrate(problem.refined(), DensityMatrix::from_pure(psi)).matrix - expected);
  EXPECT_GT(coarse / fine, 12.0);
  EXPECT_LT(coarse / fine, 20.0);
}

TEST(Integrate, TwoPhotonAbsorptionDecayLaw)
{
  // Single mode, H = 0, jump a^2: |2> decays to |0> at rate 2 gamma.
  const auto basis = fock::enumerate_basis(1, 2);
  const auto a = fock::annihilation(basis, 0).matrix();
  const double gamma = 0.7;
  const OperatorMatrix zero(basis, fock::Matrix::Zero(3, 3), fock::OperatorKind::hermitian);
  const auto problem =
    MasterEquationProblem::with_stable_step(zero, {make_channel(OperatorMatrix(basis, a * a), gamma)}, 1.5);
  fock::StateVector s = fock::basis_state(basis, std::array{2});
  const auto rho = integrate(problem, DensityMatrix::from_pure(s));
  EXPECT_NEAR(rho.population(std::array{2}), std::exp(-2 * gamma * 1.5), 1e-10);
  EXPECT_NEAR(rho.population(std::array{0}), 1 - std::exp(-2 * gamma * 1.5), 1e-10);
  EXPECT_NEAR(rho.population(std::array{1}), 0.0, 1e-14);
}

TEST(Integrate, SinglePhotonLossDecayLaw)
{
  const auto basis = fock::enumerate_basis(1, 1);
  const OperatorMatrix zero(basis, fock::Matrix::Zero(2, 2), fock::OperatorKind::hermitian);
  const auto problem =
    MasterEquationProblem::with_stable_step(zero, {make_channel(fock::annihilation(basis, 0), 2.0)}, 0.8);
  const auto rho = integrate(problem, DensityMatrix::from_pure(fock::basis_state(basis, std::array{1})));
  EXPECT_NEAR(rho.population(std::array{1}), std::exp(-1.6), 1e-10);
}

TEST(RungeKuttaPropagator, StepMapIsOneRk4StepOnArbitraryOperators)
{
  std::mt19937 rng(3);
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto problem = coupled_absorption_problem(pair, 3.0, 0.2);
  const RungeKuttaPropagator prop(problem);
  const fock::Matrix x = zeno::testing::random_complex_matrix(rng, 6, 6);
  const double h = problem.dt();
  const fock::Matrix k1 = problem.rhs(x);
  const fock::Matrix k2 = problem.rhs(x + 0.5 * h * k1);
  const fock::Matrix k3 = problem.rhs(x + 0.5 * h * k2);
  const fock::Matrix k4 = problem.rhs(x + h * k3);
  const fock::Matrix expected = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  EXPECT_LT(fock::max_abs(RungeKuttaPropagator::apply(prop.step_map(), x) - expected), 1e-14);
  EXPECT_LT(fock::max_abs(RungeKuttaPropagator::apply(prop.power(3), x) -
                          RungeKuttaPropagator::apply(prop.step_map() * prop.step_map() * prop.step_map(), x)),
            1e-14);
}

TEST(RungeKuttaPropagator, CoordinatesRoundTripAndTraceRow)
{
  std::mt19937 rng(4);
  const fock::Matrix x = zeno::testing::random_complex_matrix(rng, 6, 6);
  const fock::Matrix herm = x + x.adjoint();
  const auto c = RungeKuttaPropagator::to_coordinates(herm);
  EXPECT_EQ(c.size(), 36);
  EXPECT_EQ(fock::max_abs(RungeKuttaPropagator::from_coordinates(c, 6) - herm), 0.0);

  const auto pair = dynamics::make_coupled_pair(1.0);
  const RungeKuttaPropagator prop(coupled_absorption_problem(pair, 5.0, 0.5));
  // Trace functional annihilates the generator.
  EXPECT_LT(prop.generator().topRows(6).colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Integrate, FastPathMatchesSerialReference)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  for (double g : {0.0, 0.5, 4.0})
  {
    const auto problem = coupled_absorption_problem(pair, g, 0.1 * g);
    const auto rho0 = pure(pair.basis, {1, 1});
    const auto fast = integrate(problem, rho0);
    const auto ref = integrate_reference(problem, rho0);
    EXPECT_LT(fock::max_abs(fast.matrix - ref.matrix), 1e-12) << g;
  }
}

TEST(Integrate, HalfStepConvergence)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  for (double g : {0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0})
  {
    EXPECT_LT(convergence_gap(coupled_absorption_problem(pair, g), pure(pair.basis, {1, 1})), kConvergenceTolerance)
      << g;
  }
}

TEST(ProcessTomography, UnitaryLimitHasQuarterFidelity)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto process = process_tomography(coupled_absorption_problem(pair, 0.0));
  EXPECT_NEAR(process.trace(), 1.0, 1e-10);
  EXPECT_NEAR(process.fidelity(dynamics::swap_prime_ideal()), 0.25, 1e-6);
  EXPECT_GT(process.min_eigenvalue(), -1e-9);
  EXPECT_LT((process.choi - process.choi.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  // A unitary channel has a rank-one Choi matrix.
  Eigen::SelfAdjointEigenSolver<ChoiMatrix> es(process.choi);
  EXPECT_NEAR(es.eigenvalues()(15), 1.0, 1e-9);
}

TEST(ProcessTomography, ChoiIsPhysicalAcrossRates)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  for (double g : {0.3, 30.0, 3000.0})
  {
    const auto process = process_tomography(coupled_absorption_problem(pair, g, 0.01));
    EXPECT_LE(process.trace(), 1.0 + 1e-10);
    EXPECT_GT(process.min_eigenvalue(), -1e-9);
    const double f = process.fidelity(dynamics::swap_prime_ideal());
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(GammaSweep, ZeroAbsorptionGivesPlainSwapDefect)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto pts = gamma_sweep(pair, {0.0});
  EXPECT_NEAR(pts[0].gate_error, 0.75, 1e-6);
  EXPECT_NEAR(pts[0].event_failure, 0.0, 1e-12);
}

TEST(GammaSweep, MonotoneFalloffAndAdiabaticLimit)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto grid = log_grid(0.1, 1e4, 61);
  ASSERT_EQ(grid.size(), 61U);
  EXPECT_EQ(grid.front(), 0.1);
  EXPECT_EQ(grid.back(), 1e4);
  const auto pts = gamma_sweep(pair, grid);
  double prev = 2.0;
  double at10 = 0.0;
  for (const auto &p : pts)
  {
    if (p.gamma2_over_kappa >= 10.0 - 1e-9)
    {
      EXPECT_LE(p.gate_error, prev + 1e-12) << p.gamma2_over_kappa;
      prev = p.gate_error;
      if (at10 == 0.0)
      {
        at10 = p.gate_error;
      }
    }
    EXPECT_LT(p.convergence_gap, kConvergenceTolerance);
    EXPECT_GT(p.min_choi_eigenvalue, -1e-9);
  }
  EXPECT_LT(pts.back().gate_error, at10 / 10.0);
  // Adiabatic elimination of |2,0>, |0,2>: |1,1> decays at 8 kappa^2 / gamma2,
  // so event failure -> 4 pi kappa / gamma2 and gate error -> pi kappa / gamma2.
  EXPECT_NEAR(pts.back().event_failure * 1e4 / (4 * kPi), 1.0, 0.01);
  EXPECT_NEAR(pts.back().gate_error * 1e4 / kPi, 1.0, 0.01);
}

TEST(GammaSweep, SwapPrimeStructureAtStrongAbsorption)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const auto map = process_tomography(coupled_absorption_problem(pair, 1e3)).vacuum_referenced_map();
  EXPECT_LT(std::abs(map(1, 2) - Complex(0, -1)), 1e-3);
  EXPECT_LT(std::abs(map(2, 1) - Complex(0, -1)), 1e-3);
  EXPECT_LT(std::abs(std::arg(map(3, 3))), 0.05);
  EXPECT_NEAR(std::abs(map(0, 0)), 1.0, 1e-12);
}

TEST(GammaSweep, SerialAndParallelAgreeAndSchemaIsFixed)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  const std::vector<double> g{0.5, 5.0, 50.0};
  const auto a = error_vs_gamma(pair, g, {}, Execution::parallel);
  const auto b = error_vs_gamma(pair, g, {}, Execution::serial);
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.columns(), (std::vector<std::string>{"gamma2_over_kappa", "event_failure", "gate_error"}));
  EXPECT_THROW(gamma_sweep(pair, {-1.0}), std::invalid_argument);
}

TEST(GammaSweep, SinglePhotonLossRaisesError)
{
  const auto pair = dynamics::make_coupled_pair(1.0);
  GammaSweepOptions lossy;
  lossy.gamma1_ratio = 1e-3;
  const auto clean = gamma_sweep(pair, {1e3});
  const auto dirty = gamma_sweep(pair, {1e3}, lossy);
  EXPECT_GT(dirty[0].gate_error, clean[0].gate_error);
}

TEST(LogGrid, Validation)
{
  EXPECT_THROW(log_grid(0.0, 1.0, 3), std::invalid_argument);
  EXPECT_THROW(log_grid(2.0, 1.0, 3), std::invalid_argument);
  EXPECT_EQ(log_grid(3.0, 3.0, 1), std::vector<double>{3.0});
  const auto g = log_grid(1.0, 100.0, 3);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
}

}  // namespace
}  // namespace zeno::lindblad
