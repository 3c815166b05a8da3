// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_EXPERIMENTS_HPP
#define ZENO_EXPERIMENTS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zeno/curve.hpp"
#include "zeno/parallel.hpp"

namespace zeno::experiments
{

// Bad flag, unknown key or unparsable value.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

const char *engine_version();

struct ParamSpec
{
  std::string key;
  std::string default_value;
  std::string help;
};

// Resolved string parameters with typed accessors. Keys are fixed at
// construction; setting an unknown key throws UsageError.
class Parameters
{
public:
  explicit Parameters(const std::vector<ParamSpec> &specs);

  bool has(const std::string &key) const;
  void set(const std::string &key, const std::string &value);

  const std::string &text(const std::string &key) const;
  double real(const std::string &key) const;
  int integer(const std::string &key) const;
  bool boolean(const std::string &key) const;
  std::vector<double> real_list(const std::string &key) const;
  // Comma-separated integers and inclusive ranges: "3..10,20,50".
  std::vector<int> integer_list(const std::string &key) const;

  const std::vector<std::pair<std::string, std::string>> &resolved() const { return values_; }

private:
  std::vector<std::pair<std::string, std::string>> values_;
};

// Flat "key = value" lines; '#' starts a comment. Throws UsageError on malformed
// lines and unknown keys.
void apply_config_text(Parameters &params, const std::string &text, const std::string &origin = "config");
void apply_config_file(Parameters &params, const std::string &path);

double parse_real(const std::string &text, const std::string &what);
int parse_integer(const std::string &text, const std::string &what);

struct ExperimentResult
{
  std::vector<ExperimentCurve> curves;
  std::string summary;
  std::vector<std::string> warnings;
};

struct Experiment
{
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  std::function<ExperimentResult(const Parameters &, Execution)> body;

  Parameters defaults() const { return Parameters(params); }
};

const std::vector<Experiment> &registry();
const Experiment &find_experiment(const std::string &name);

// Runs the body and stamps every curve with the experiment name, engine
// version and the full resolved parameter set (ahead of any result metadata).
ExperimentResult run_experiment(const Experiment &experiment, const Parameters &params,
                                Execution exec = Execution::parallel);

}  // namespace zeno::experiments

#endif  // ZENO_EXPERIMENTS_HPP
