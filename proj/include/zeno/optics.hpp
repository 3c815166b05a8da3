// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_OPTICS_HPP
#define ZENO_OPTICS_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zeno/fock.hpp"

namespace zeno::optics
{

using fock::BasisPtr;
using fock::Complex;
using fock::Matrix;
using fock::OperatorMatrix;
using fock::StateVector;

// Each spatial path owns two Fock modes: 2p carries H (logical 0), 2p + 1
// carries V (logical 1).
enum class Polarization
{
  H = 0,
  V = 1
};

inline int mode_of(int path, Polarization pol) { return 2 * path + static_cast<int>(pol); }

// V reflects between the two paths and picks up this phase; H transmits.
inline constexpr Complex kPbsReflectionPhase{0.0, 1.0};

struct PolarizingBeamSplitter
{
  int path_a;
  int path_b;
};

// H -> cos(angle) H + sin(angle) V,  V -> -sin(angle) H + cos(angle) V.
struct PolarizationRotation
{
  int path;
  double angle;
};

struct PhaseShift
{
  int path;
  Polarization polarization;
  double phase;
};

using CircuitElement = std::variant<PolarizingBeamSplitter, PolarizationRotation, PhaseShift>;

class PolarizedCircuit
{
public:
  // max_photons sets the Fock truncation; it must cover the photons sent in.
  PolarizedCircuit(int num_paths, int max_photons);

  int num_paths() const { return num_paths_; }
  const BasisPtr &basis() const { return basis_; }
  const std::vector<CircuitElement> &elements() const { return elements_; }

  PolarizedCircuit &add(CircuitElement element);

  // Single-particle (2 num_paths square) matrix of one element / the circuit.
  Matrix element_mode_matrix(const CircuitElement &element) const;
  Matrix mode_matrix() const;

  OperatorMatrix element_unitary(const CircuitElement &element) const;
  // Lift of the composed mode matrix; equals the product of the element lifts.
  OperatorMatrix unitary() const;

private:
  void check_path(int path) const;

  int num_paths_;
  BasisPtr basis_;
  std::vector<CircuitElement> elements_;
};

OperatorMatrix pbs_unitary(const BasisPtr &basis, int path_a, int path_b);

enum class Pauli
{
  I,
  Z,
  X,
  ZX  // sigma_z sigma_x: X applied first
};

std::string to_string(Pauli p);
Matrix pauli_matrix(Pauli p);

struct PathCorrection
{
  int path;
  Pauli pauli;
};

// Exact photon counts on the H and V modes of every measured path, in
// measured_paths order: {n_H(p0), n_V(p0), n_H(p1), ...}.
using DetectionPattern = std::vector<int>;

struct AcceptedPattern
{
  DetectionPattern counts;
  std::vector<PathCorrection> corrections;
};

struct PostSelectionRule
{
  std::vector<int> measured_paths;
  std::vector<AcceptedPattern> accepted;
};

struct PostSelectedOutcome
{
  DetectionPattern counts;
  double probability;
  StateVector state;  // renormalized, corrections applied
};

// Circuit unitary and correction lifts computed once, reused for every input.
class PostSelector
{
public:
  PostSelector(const PolarizedCircuit &circuit, PostSelectionRule rule);

  const OperatorMatrix &unitary() const { return unitary_; }
  const PostSelectionRule &rule() const { return rule_; }

  std::vector<PostSelectedOutcome> run(const StateVector &input) const;

private:
  int num_paths_;
  OperatorMatrix unitary_;
  PostSelectionRule rule_;
  std::vector<std::optional<OperatorMatrix>> corrections_;
};

std::vector<PostSelectedOutcome> run_postselected(const PolarizedCircuit &circuit, const StateVector &input,
                                                  const PostSelectionRule &rule);

// Photon count per path (H + V) after the circuit, with its probability;
// every pattern with probability above 1e-14 is listed, sorted by pattern.
struct PathCountProbability
{
  std::vector<int> photons_per_path;
  double probability;
};

std::vector<PathCountProbability> path_count_distribution(const PolarizedCircuit &circuit, const StateVector &input);
std::vector<PathCountProbability> path_count_distribution(const OperatorMatrix &unitary, int num_paths,
                                                          const StateVector &input);

// Polarization qubit amplitudes (H, V).
struct Qubit
{
  Complex zero{1.0};
  Complex one{0.0};
};

inline constexpr Qubit kLogicalZero{Complex{1.0}, Complex{0.0}};
inline constexpr Qubit kLogicalOne{Complex{0.0}, Complex{1.0}};

// Two-qubit logical amplitudes ordered |00>, |01>, |10>, |11> (control first).
using LogicalState = Eigen::Vector4cd;

LogicalState ideal_cnot(const Qubit &control, const Qubit &target);

// Paths of the polarizing-beam-splitter CNOT: control and target outputs plus
// the two ancilla paths that end at the detectors.
struct CnotPaths
{
  static constexpr int control = 0;
  static constexpr int target = 1;
  static constexpr int ancilla_control = 2;  // ends at the control-side detector
  static constexpr int ancilla_target = 3;   // ends at the target-side detector
};

// Detector outcome after the 45 degree analysis: which polarization mode of
// each detector path (control side, target side) fired.
struct CnotBranch
{
  Polarization control_detector;
  Polarization target_detector;
  PathCorrection control_correction;
  PathCorrection target_correction;
};

// Feed-forward table, one entry per accepted detector outcome.
const std::array<CnotBranch, 4> &cnot_correction_table();

struct CnotBranchResult
{
  CnotBranch branch;
  double probability;
  LogicalState output;      // normalized, corrections applied
  double fidelity;          // |<ideal|output>|^2
};

struct CnotResult
{
  double success_probability;
  LogicalState output;  // from the most probable branch
  double min_fidelity;  // over branches with nonzero probability
  std::vector<CnotBranchResult> branches;
};

// The 4-path gate: ancillas in (|HH> + |VV>)/sqrt(2), PBS between control and
// the first ancilla, PBS in the diagonal basis between target and the second
// ancilla, both detector paths analysed at 45 degrees, exactly one photon per
// detector accepted.
class PbsCnot
{
public:
  PbsCnot();

  const PolarizedCircuit &circuit() const { return circuit_; }
  const PostSelectionRule &rule() const { return selector_.rule(); }

  StateVector prepare(const Qubit &control, const Qubit &target) const;
  CnotResult run(const Qubit &control, const Qubit &target) const;

  // Unnormalized post-selected logical output of every branch (fixed table
  // order), without feed-forward; linear in the input.
  std::array<LogicalState, 4> raw_branch_outputs(const StateVector &input) const;
  // Same, for a general two-qubit logical input (not necessarily product).
  std::array<LogicalState, 4> raw_branch_outputs(const LogicalState &input) const;

  std::vector<PathCountProbability> outcome_distribution(const Qubit &control, const Qubit &target) const;

  // Detector patterns in table order for the measured paths {ancilla_control, ancilla_target}.
  static DetectionPattern pattern_of(const CnotBranch &branch);
  LogicalState logical_amplitudes(const StateVector &state, const DetectionPattern &pattern) const;

private:
  StateVector prepare_logical(const LogicalState &input) const;

  PolarizedCircuit circuit_;
  PostSelector selector_;
};

}  // namespace zeno::optics

#endif  // ZENO_OPTICS_HPP
