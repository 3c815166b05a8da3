// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/optics.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "zeno/error.hpp"

namespace zeno::optics
{

namespace
{

constexpr double kNormTolerance = 1e-10;

int total_photons(const StateVector &s)
{
  // Largest photon number carrying weight.
  int most = 0;
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
  {
    if (std::norm(s.amplitudes(i)) > fock::kNullProbability)
    {
      most = std::max(most, s.basis->total_photons(static_cast<std::size_t>(i)));
    }
  }
  return most;
}

Matrix correction_mode_matrix(int num_paths, const std::vector<PathCorrection> &corrections)
{
  Matrix m = Matrix::Identity(2 * num_paths, 2 * num_paths);
  for (const auto &c : corrections)
  {
    if (c.path < 0 || c.path >= num_paths)
    {
      throw std::invalid_argument("correction references nonexistent path " + std::to_string(c.path));
    }
    m.block(2 * c.path, 2 * c.path, 2, 2) = pauli_matrix(c.pauli);
  }
  return m;
}

}  // namespace

PolarizedCircuit::PolarizedCircuit(int num_paths, int max_photons)
  : num_paths_(num_paths), basis_(fock::enumerate_basis(2 * num_paths, max_photons))
{
}

void PolarizedCircuit::check_path(int path) const
{
  if (path < 0 || path >= num_paths_)
  {
    throw std::invalid_argument("path " + std::to_string(path) + " outside [0, " + std::to_string(num_paths_) + ")");
  }
}

PolarizedCircuit &PolarizedCircuit::add(CircuitElement element)
{
  std::visit(
    [&](const auto &e) {
      using T = std::decay_t<decltype(e)>;
      if constexpr (std::is_same_v<T, PolarizingBeamSplitter>)
      {
        check_path(e.path_a);
        check_path(e.path_b);
        if (e.path_a == e.path_b)
        {
          throw std::invalid_argument("polarizing beam splitter needs two distinct paths");
        }
      }
      else
      {
        check_path(e.path);
      }
    },
    element);
  elements_.push_back(element);
  return *this;
}

Matrix PolarizedCircuit::element_mode_matrix(const CircuitElement &element) const
{
  const int modes = 2 * num_paths_;
  Matrix m = Matrix::Identity(modes, modes);
  std::visit(
    [&](const auto &e) {
      using T = std::decay_t<decltype(e)>;
      if constexpr (std::is_same_v<T, PolarizingBeamSplitter>)
      {
        const int va = mode_of(e.path_a, Polarization::V);
        const int vb = mode_of(e.path_b, Polarization::V);
        m(va, va) = 0.0;
        m(vb, vb) = 0.0;
        m(vb, va) = kPbsReflectionPhase;
        m(va, vb) = kPbsReflectionPhase;
      }
      else if constexpr (std::is_same_v<T, PolarizationRotation>)
      {
        const int h = mode_of(e.path, Polarization::H);
        const int v = mode_of(e.path, Polarization::V);
        const double c = std::cos(e.angle);
        const double s = std::sin(e.angle);
        m(h, h) = c;
        m(v, h) = s;
        m(h, v) = -s;
        m(v, v) = c;
      }
      else
      {
        const int k = mode_of(e.path, e.polarization);
        m(k, k) = std::exp(fock::kI * e.phase);
      }
    },
    element);
  return m;
}

Matrix PolarizedCircuit::mode_matrix() const
{
  Matrix m = Matrix::Identity(2 * num_paths_, 2 * num_paths_);
  for (const auto &e : elements_)
  {
    m = element_mode_matrix(e) * m;
  }
  return m;
}

OperatorMatrix PolarizedCircuit::element_unitary(const CircuitElement &element) const
{
  return fock::lift_mode_unitary(basis_, element_mode_matrix(element));
}

OperatorMatrix PolarizedCircuit::unitary() const
{
  return fock::lift_mode_unitary(basis_, mode_matrix());
}

OperatorMatrix pbs_unitary(const BasisPtr &basis, int path_a, int path_b)
{
  if (basis->num_modes() % 2 != 0)
  {
    throw std::invalid_argument("polarized basis needs an even number of modes");
  }
  PolarizedCircuit circuit(basis->num_modes() / 2, basis->max_total());
  circuit.add(PolarizingBeamSplitter{path_a, path_b});
  return fock::lift_mode_unitary(basis, circuit.mode_matrix());
}

std::string to_string(Pauli p)
{
  switch (p)
  {
  case Pauli::I:
    return "I";
  case Pauli::Z:
    return "Z";
  case Pauli::X:
    return "X";
  case Pauli::ZX:
    return "ZX";
  }
  return "?";
}

Matrix pauli_matrix(Pauli p)
{
  Matrix m(2, 2);
  switch (p)
  {
  case Pauli::I:
    m << 1, 0, 0, 1;
    break;
  case Pauli::Z:
    m << 1, 0, 0, -1;
    break;
  case Pauli::X:
    m << 0, 1, 1, 0;
    break;
  case Pauli::ZX:
    m << 0, 1, -1, 0;
    break;
  }
  return m;
}

PostSelector::PostSelector(const PolarizedCircuit &circuit, PostSelectionRule rule)
  : num_paths_(circuit.num_paths()), unitary_(circuit.unitary()), rule_(std::move(rule))
{
  for (int p : rule_.measured_paths)
  {
    if (p < 0 || p >= num_paths_)
    {
      throw std::invalid_argument("post-selection references nonexistent path " + std::to_string(p));
    }
  }
  const std::size_t measured_modes = 2 * rule_.measured_paths.size();
  for (const auto &a : rule_.accepted)
  {
    if (a.counts.size() != measured_modes)
    {
      throw std::invalid_argument("detection pattern size does not match the measured modes");
    }
    if (a.corrections.empty())
    {
      corrections_.emplace_back();
    }
    else
    {
      corrections_.emplace_back(
        fock::lift_mode_unitary(unitary_.basis(), correction_mode_matrix(num_paths_, a.corrections)));
    }
  }
}

std::vector<PostSelectedOutcome> PostSelector::run(const StateVector &input) const
{
  const BasisPtr &basis = unitary_.basis();
  if (input.basis->num_modes() != basis->num_modes() || input.basis->max_total() != basis->max_total())
  {
    throw std::invalid_argument("input state lives on a different basis than the circuit");
  }
  if (std::abs(input.norm() - 1.0) > kNormTolerance)
  {
    throw std::invalid_argument("run_postselected requires a normalized input state");
  }

  const StateVector output = fock::apply(unitary_, input);
  std::vector<PostSelectedOutcome> outcomes;
  outcomes.reserve(rule_.accepted.size());
  for (std::size_t i = 0; i < rule_.accepted.size(); ++i)
  {
    const auto &accepted = rule_.accepted[i];
    auto projector = fock::projector_onto(basis, [&](const fock::Occupation &occ) {
      for (std::size_t k = 0; k < rule_.measured_paths.size(); ++k)
      {
        const int p = rule_.measured_paths[k];
        if (occ[static_cast<std::size_t>(mode_of(p, Polarization::H))] != accepted.counts[2 * k] ||
            occ[static_cast<std::size_t>(mode_of(p, Polarization::V))] != accepted.counts[2 * k + 1])
        {
          return false;
        }
      }
      return true;
    });
    auto [probability, state] = fock::project(output, projector);
    if (corrections_[i] && probability > 0.0)
    {
      state = fock::apply(*corrections_[i], state);
    }
    outcomes.push_back(PostSelectedOutcome{accepted.counts, probability, std::move(state)});
  }
  double total = 0.0;
  for (const auto &o : outcomes)
  {
    total += o.probability;
  }
  if (total > 1.0 + 1e-9)
  {
    throw InvariantError("post-selection probability", "accepted patterns sum to " + std::to_string(total));
  }
  return outcomes;
}

std::vector<PostSelectedOutcome> run_postselected(const PolarizedCircuit &circuit, const StateVector &input,
                                                  const PostSelectionRule &rule)
{
  return PostSelector(circuit, rule).run(input);
}

std::vector<PathCountProbability> path_count_distribution(const PolarizedCircuit &circuit, const StateVector &input)
{
  return path_count_distribution(circuit.unitary(), circuit.num_paths(), input);
}

std::vector<PathCountProbability> path_count_distribution(const OperatorMatrix &unitary, int num_paths,
                                                          const StateVector &input)
{
  const StateVector output = fock::apply(unitary, input);
  std::map<std::vector<int>, double> weights;
  for (Eigen::Index i = 0; i < output.amplitudes.size(); ++i)
  {
    const double p = std::norm(output.amplitudes(i));
    if (p <= fock::kNullProbability)
    {
      continue;
    }
    const auto &occ = output.basis->occupation(static_cast<std::size_t>(i));
    std::vector<int> per_path(static_cast<std::size_t>(num_paths));
    for (int path = 0; path < num_paths; ++path)
    {
      per_path[static_cast<std::size_t>(path)] = occ[static_cast<std::size_t>(mode_of(path, Polarization::H))] +
                                                 occ[static_cast<std::size_t>(mode_of(path, Polarization::V))];
    }
    weights[per_path] += p;
  }
  std::vector<PathCountProbability> out;
  for (auto &[pattern, p] : weights)
  {
    out.push_back(PathCountProbability{pattern, p});
  }
  return out;
}

LogicalState ideal_cnot(const Qubit &control, const Qubit &target)
{
  LogicalState s;
  s << control.zero * target.zero, control.zero * target.one, control.one * target.one, control.one * target.zero;
  return s;
}

const std::array<CnotBranch, 4> &cnot_correction_table()
{
  // Derived by maximizing the conditional fidelity over all Pauli pairs for
  // each outcome (see optics_test); frozen here.
  static const std::array<CnotBranch, 4> table{{
    {Polarization::H, Polarization::H, {CnotPaths::control, Pauli::I}, {CnotPaths::target, Pauli::I}},
    {Polarization::H, Polarization::V, {CnotPaths::control, Pauli::I}, {CnotPaths::target, Pauli::X}},
    {Polarization::V, Polarization::H, {CnotPaths::control, Pauli::Z}, {CnotPaths::target, Pauli::I}},
    {Polarization::V, Polarization::V, {CnotPaths::control, Pauli::Z}, {CnotPaths::target, Pauli::X}},
  }};
  return table;
}

namespace
{

PolarizedCircuit cnot_circuit()
{
  constexpr double quarter = std::numbers::pi / 4.0;
  PolarizedCircuit circuit(4, 4);
  circuit.add(PolarizingBeamSplitter{CnotPaths::control, CnotPaths::ancilla_control});
  // Target-side beam splitter acts in the diagonal basis.
  circuit.add(PolarizationRotation{CnotPaths::target, quarter});
  circuit.add(PolarizationRotation{CnotPaths::ancilla_target, quarter});
  circuit.add(PolarizingBeamSplitter{CnotPaths::target, CnotPaths::ancilla_target});
  circuit.add(PolarizationRotation{CnotPaths::target, -quarter});
  // 45 degree analysis in front of both detectors.
  circuit.add(PolarizationRotation{CnotPaths::ancilla_control, quarter});
  circuit.add(PolarizationRotation{CnotPaths::ancilla_target, quarter});
  return circuit;
}

PostSelectionRule cnot_rule()
{
  PostSelectionRule rule;
  rule.measured_paths = {CnotPaths::ancilla_control, CnotPaths::ancilla_target};
  for (const auto &branch : cnot_correction_table())
  {
    rule.accepted.push_back(
      AcceptedPattern{PbsCnot::pattern_of(branch), {branch.control_correction, branch.target_correction}});
  }
  return rule;
}

}  // namespace

PbsCnot::PbsCnot() : circuit_(cnot_circuit()), selector_(circuit_, cnot_rule()) {}

DetectionPattern PbsCnot::pattern_of(const CnotBranch &branch)
{
  DetectionPattern counts(4, 0);
  counts[static_cast<std::size_t>(branch.control_detector)] = 1;
  counts[2 + static_cast<std::size_t>(branch.target_detector)] = 1;
  return counts;
}

StateVector PbsCnot::prepare_logical(const LogicalState &input) const
{
  const BasisPtr &basis = circuit_.basis();
  StateVector s = fock::zero_state(basis);
  const double bell = 1.0 / std::sqrt(2.0);
  for (int c = 0; c < 2; ++c)
  {
    for (int t = 0; t < 2; ++t)
    {
      const Complex amp = input(2 * c + t);
      if (amp == Complex{0.0})
      {
        continue;
      }
      for (int a = 0; a < 2; ++a)
      {
        fock::Occupation occ(8, 0);
        occ[static_cast<std::size_t>(mode_of(CnotPaths::control, static_cast<Polarization>(c)))] = 1;
        occ[static_cast<std::size_t>(mode_of(CnotPaths::target, static_cast<Polarization>(t)))] = 1;
        occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_control, static_cast<Polarization>(a)))] = 1;
        occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_target, static_cast<Polarization>(a)))] = 1;
        s.amplitudes(static_cast<Eigen::Index>(basis->index_of(occ))) += amp * bell;
      }
    }
  }
  return s;
}

StateVector PbsCnot::prepare(const Qubit &control, const Qubit &target) const
{
  const double nc = std::norm(control.zero) + std::norm(control.one);
  const double nt = std::norm(target.zero) + std::norm(target.one);
  if (std::abs(nc - 1.0) > kNormTolerance || std::abs(nt - 1.0) > kNormTolerance)
  {
    throw std::invalid_argument("logical qubit inputs must be normalized single-photon states");
  }
  LogicalState input;
  input << control.zero * target.zero, control.zero * target.one, control.one * target.zero, control.one * target.one;
  return prepare_logical(input);
}

LogicalState PbsCnot::logical_amplitudes(const StateVector &state, const DetectionPattern &pattern) const
{
  LogicalState out;
  for (int c = 0; c < 2; ++c)
  {
    for (int t = 0; t < 2; ++t)
    {
      fock::Occupation occ(8, 0);
      occ[static_cast<std::size_t>(mode_of(CnotPaths::control, static_cast<Polarization>(c)))] = 1;
      occ[static_cast<std::size_t>(mode_of(CnotPaths::target, static_cast<Polarization>(t)))] = 1;
      occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_control, Polarization::H))] = pattern[0];
      occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_control, Polarization::V))] = pattern[1];
      occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_target, Polarization::H))] = pattern[2];
      occ[static_cast<std::size_t>(mode_of(CnotPaths::ancilla_target, Polarization::V))] = pattern[3];
      out(2 * c + t) = state.amplitude(occ);
    }
  }
  return out;
}

std::array<LogicalState, 4> PbsCnot::raw_branch_outputs(const StateVector &input) const
{
  const StateVector output = fock::apply(selector_.unitary(), input);
  std::array<LogicalState, 4> out;
  const auto &table = cnot_correction_table();
  for (std::size_t k = 0; k < table.size(); ++k)
  {
    out[k] = logical_amplitudes(output, pattern_of(table[k]));
  }
  return out;
}

std::array<LogicalState, 4> PbsCnot::raw_branch_outputs(const LogicalState &input) const
{
  return raw_branch_outputs(prepare_logical(input));
}

CnotResult PbsCnot::run(const Qubit &control, const Qubit &target) const
{
  const StateVector input = prepare(control, target);
  if (total_photons(input) != 4)
  {
    throw std::invalid_argument("CNOT input must carry exactly four photons");
  }
  const auto outcomes = selector_.run(input);
  const LogicalState ideal = ideal_cnot(control, target);
  const auto &table = cnot_correction_table();

  CnotResult result{0.0, LogicalState::Zero(), 1.0, {}};
  double best = -1.0;
  for (std::size_t k = 0; k < outcomes.size(); ++k)
  {
    const auto &o = outcomes[k];
    LogicalState logical = LogicalState::Zero();
    double fidelity = 0.0;
    if (o.probability > 0.0)
    {
      logical = logical_amplitudes(o.state, o.counts);
      const double captured = logical.squaredNorm();
      if (std::abs(captured - 1.0) > 1e-9)
      {
        throw InvariantError("logical encoding", "post-selected state leaks out of the one-photon-per-path subspace");
      }
      fidelity = std::norm(ideal.dot(logical));
      result.min_fidelity = std::min(result.min_fidelity, fidelity);
      if (o.probability > best + 1e-12)
      {
        best = o.probability;
        result.output = logical;
      }
    }
    result.success_probability += o.probability;
    result.branches.push_back(CnotBranchResult{table[k], o.probability, logical, fidelity});
  }
  return result;
}

std::vector<PathCountProbability> PbsCnot::outcome_distribution(const Qubit &control, const Qubit &target) const
{
  return path_count_distribution(selector_.unitary(), circuit_.num_paths(), prepare(control, target));
}

}  // namespace zeno::optics
