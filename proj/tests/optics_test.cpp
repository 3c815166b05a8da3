// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "zeno/optics.hpp"

namespace zeno::optics
{
namespace
{

using fock::Occupation;

Occupation single_photon(int path, Polarization pol, int paths = 2)
{
  Occupation occ(static_cast<std::size_t>(2 * paths), 0);
  occ[static_cast<std::size_t>(mode_of(path, pol))] = 1;
  return occ;
}

Eigen::Matrix2cd pauli(int k)
{
  Eigen::Matrix2cd m;
  switch (k)
  {
  case 0:
    m << 1, 0, 0, 1;
    break;
  case 1:
    m << 1, 0, 0, -1;
    break;
  case 2:
    m << 0, 1, 1, 0;
    break;
  default:
    m << 0, 1, -1, 0;  // Z X
    break;
  }
  return m;
}

constexpr std::array<Pauli, 4> kPauliOrder{Pauli::I, Pauli::Z, Pauli::X, Pauli::ZX};

Eigen::Matrix4cd cnot_matrix()
{
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
  return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b)
{
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
  {
    for (int j = 0; j < 2; ++j)
    {
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return m;
}

Qubit random_qubit(std::mt19937 &rng)
{
  const auto v = zeno::testing::random_state(rng, 2);
  return Qubit{v(0), v(1)};
}

TEST(PolarizingBeamSplitter, TransmitsHReflectsVWithPhase)
{
  PolarizedCircuit c(2, 1);
  c.add(PolarizingBeamSplitter{0, 1});
  const auto u = c.unitary();
  const auto basis = c.basis();
  auto out = fock::apply(u, fock::basis_state(basis, single_photon(0, Polarization::H)));
  EXPECT_NEAR(std::abs(out.amplitude(single_photon(0, Polarization::H)) - 1.0), 0.0, 1e-15);
  out = fock::apply(u, fock::basis_state(basis, single_photon(0, Polarization::V)));
  EXPECT_NEAR(std::abs(out.amplitude(single_photon(1, Polarization::V)) - kPbsReflectionPhase), 0.0, 1e-15);
  out = fock::apply(u, fock::basis_state(basis, single_photon(1, Polarization::V)));
  EXPECT_NEAR(std::abs(out.amplitude(single_photon(0, Polarization::V)) - kPbsReflectionPhase), 0.0, 1e-15);
}

TEST(PolarizationRotation, RotatesHTowardsV)
{
  const double theta = 0.3;
  PolarizedCircuit c(1, 1);
  c.add(PolarizationRotation{0, theta});
  const auto m = c.mode_matrix();
  EXPECT_NEAR(std::abs(m(0, 0) - std::cos(theta)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - std::sin(theta)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) + std::sin(theta)), 0.0, 1e-15);
  EXPECT_THROW(c.add(PolarizationRotation{1, theta}), std::invalid_argument);
}

TEST(PostSelection, RejectsUnnormalizedInput)
{
  const PbsCnot gate;
  auto s = gate.prepare(kLogicalZero, kLogicalZero);
  s.amplitudes *= 2.0;
  EXPECT_THROW(run_postselected(gate.circuit(), s, gate.rule()), std::invalid_argument);
  EXPECT_THROW(gate.run(Qubit{1.0, 1.0}, kLogicalZero), std::invalid_argument);
}

// Derives the feed-forward table from the raw branch maps: for each detector
// outcome, the unique Pauli pair that turns the branch into a CNOT.
TEST(PbsCnot, CorrectionTableFollowsFromRawBranches)
{
  const PbsCnot gate;
  std::array<Eigen::Matrix4cd, 4> raw;
  for (int i = 0; i < 4; ++i)
  {
    LogicalState e = LogicalState::Zero();
    e(i) = 1.0;
    const auto branches = gate.raw_branch_outputs(e);
    for (int k = 0; k < 4; ++k)
    {
      raw[static_cast<std::size_t>(k)].col(i) = branches[static_cast<std::size_t>(k)];
    }
  }
  const auto ideal = cnot_matrix();
  const auto &table = cnot_correction_table();
  for (std::size_t k = 0; k < 4; ++k)
  {
    int matches = 0;
    for (int pc = 0; pc < 4; ++pc)
    {
      for (int pt = 0; pt < 4; ++pt)
      {
        const Eigen::Matrix4cd corrected = kron(pauli(pc), pauli(pt)) * raw[k];
        // Proportional to CNOT with |scale|^2 = 1/16.
        const auto scale = (ideal.adjoint() * corrected).trace() / 4.0;
        if ((corrected - scale * ideal).norm() < 1e-12 && std::abs(std::norm(scale) - 1.0 / 16.0) < 1e-12)
        {
          ++matches;
          EXPECT_EQ(table[k].control_correction.pauli, kPauliOrder[static_cast<std::size_t>(pc)]) << k;
          EXPECT_EQ(table[k].target_correction.pauli, kPauliOrder[static_cast<std::size_t>(pt)]) << k;
        }
      }
    }
    EXPECT_EQ(matches, 1) << "branch " << k;
    EXPECT_EQ(table[k].control_correction.path, CnotPaths::control);
    EXPECT_EQ(table[k].target_correction.path, CnotPaths::target);
  }
}

TEST(PbsCnot, BasisInputsSucceedWithQuarterProbability)
{
  const PbsCnot gate;
  for (int c = 0; c < 2; ++c)
  {
    for (int t = 0; t < 2; ++t)
    {
      const auto r = gate.run(c ? kLogicalOne : kLogicalZero, t ? kLogicalOne : kLogicalZero);
      EXPECT_NEAR(r.success_probability, 0.25, 1e-9);
      EXPECT_NEAR(r.min_fidelity, 1.0, 1e-9);
      const int expected = 2 * c + (t ^ c);
      EXPECT_NEAR(std::norm(r.output(expected)), 1.0, 1e-9);
      ASSERT_EQ(r.branches.size(), 4U);
      for (const auto &b : r.branches)
      {
        EXPECT_NEAR(b.probability, 1.0 / 16.0, 1e-12);
      }
    }
  }
}

TEST(PbsCnot, RandomProductSuperpositions)
{
  std::mt19937 rng(424242);
  const PbsCnot gate;
  for (int trial = 0; trial < 20; ++trial)
  {
    const Qubit c = random_qubit(rng);
    const Qubit t = random_qubit(rng);
    const auto r = gate.run(c, t);
    EXPECT_NEAR(r.success_probability, 0.25, 1e-9);
    EXPECT_NEAR(r.min_fidelity, 1.0, 1e-9);
  }
}

TEST(PbsCnot, EntangledInputsAreMappedLinearly)
{
  // Branches are linear maps, so entangled logical inputs come out as CNOT|psi>
  // up to the branch's Pauli correction.
  std::mt19937 rng(99);
  const PbsCnot gate;
  const auto ideal = cnot_matrix();
  for (int trial = 0; trial < 5; ++trial)
  {
    const LogicalState psi = zeno::testing::random_state(rng, 4);
    const auto raw = gate.raw_branch_outputs(psi);
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
    {
      const auto &b = cnot_correction_table()[k];
      const Eigen::Matrix4cd corr =
        kron(pauli_matrix(b.control_correction.pauli), pauli_matrix(b.target_correction.pauli));
      const LogicalState out = corr * raw[k];
      total += out.squaredNorm();
      EXPECT_NEAR(std::norm((ideal * psi).dot(out)) / out.squaredNorm(), 1.0, 1e-12);
    }
    EXPECT_NEAR(total, 0.25, 1e-12);
  }
}

TEST(PbsCnot, OnlyFailureModeIsPhotonBunching)
{
  const PbsCnot gate;
  std::mt19937 rng(5);
  std::vector<std::pair<Qubit, Qubit>> inputs{{kLogicalZero, kLogicalZero},
                                              {kLogicalZero, kLogicalOne},
                                              {kLogicalOne, kLogicalZero},
                                              {kLogicalOne, kLogicalOne}};
  for (int k = 0; k < 5; ++k)
  {
    inputs.emplace_back(random_qubit(rng), random_qubit(rng));
  }
  for (const auto &[c, t] : inputs)
  {
    double accepted = 0.0;
    double total = 0.0;
    for (const auto &o : gate.outcome_distribution(c, t))
    {
      const auto &n = o.photons_per_path;
      total += o.probability;
      const bool one_per_detector = n[CnotPaths::ancilla_control] == 1 && n[CnotPaths::ancilla_target] == 1;
      if (one_per_detector)
      {
        accepted += o.probability;
        EXPECT_EQ(n[CnotPaths::control], 1);
        EXPECT_EQ(n[CnotPaths::target], 1);
        continue;
      }
      // Every rejected event has two photons sharing one path.
      EXPECT_GE(*std::max_element(n.begin(), n.end()), 2) << n[0] << n[1] << n[2] << n[3];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(accepted, 0.25, 1e-12);
  }
}

TEST(Pauli, MatricesAndNames)
{
  for (std::size_t k = 0; k < 4; ++k)
  {
    EXPECT_LT((pauli_matrix(kPauliOrder[k]) - pauli(static_cast<int>(k))).norm(), 1e-15);
  }
  EXPECT_EQ(to_string(Pauli::ZX), "ZX");
}

}  // namespace
}  // namespace zeno::optics
