// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "zeno/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <memory>
#include <ostream>

#include "zeno/curve.hpp"
#include "zeno/error.hpp"
#include "zeno/experiments.hpp"

namespace zeno::cli
{

namespace
{

namespace ex = experiments;

struct SubcommandOptions
{
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
  std::string config;
  std::string out_dir = "results";
  std::string formats = "csv,json,svg";
  bool serial = false;
};

int execute(const ex::Experiment &experiment, const SubcommandOptions &opts, std::ostream &out, std::ostream &err)
{
  auto params = experiment.defaults();
  if (!opts.config.empty())
  {
    ex::apply_config_file(params, opts.config);
  }
  for (const auto &[key, option] : opts.options)
  {
    if (option->count() > 0)
    {
      params.set(key, opts.values.at(key));
    }
  }
  std::vector<Format> formats;
  try
  {
    formats = parse_formats(opts.formats);
  }
  catch (const std::invalid_argument &e)
  {
    throw ex::UsageError(e.what());
  }
  const auto result = ex::run_experiment(experiment, params, opts.serial ? Execution::serial : Execution::parallel);
  for (const auto &w : result.warnings)
  {
    err << "warning: " << w << '\n';
  }
  for (const auto &curve : result.curves)
  {
    emit(curve, formats, opts.out_dir);
  }
  out << result.summary << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"zeno-sim: quantum-optics gate simulations"};
  app.name("zeno-sim");
  app.set_version_flag("--version", ex::engine_version());
  app.require_subcommand(1);

  std::map<std::string, std::unique_ptr<SubcommandOptions>> store;
  for (const auto &e : ex::registry())
  {
    auto *sub = app.add_subcommand(e.name, e.description);
    auto &opts = *store.emplace(e.name, std::make_unique<SubcommandOptions>()).first->second;
    for (const auto &p : e.params)
    {
      opts.values[p.key] = p.default_value;
      opts.options[p.key] = sub->add_option("--" + p.key, opts.values[p.key], p.help)->default_str(p.default_value);
    }
    sub->add_option("--config", opts.config, "flat key = value parameter file (flags override it)");
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", opts.formats, "comma-separated subset of csv,json,svg")->capture_default_str();
    sub->add_flag("--serial", opts.serial, "evaluate sweep points on one thread");
  }

  // CLI11 consumes arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try
  {
    for (const auto &e : ex::registry())
    {
      if (app.got_subcommand(e.name))
      {
        return execute(e, *store.at(e.name), out, err);
      }
    }
    err << app.help();
    return kUsage;
  }
  catch (const ex::UsageError &e)
  {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  catch (const InvariantError &e)
  {
    err << "error: invariant violated: " << e.what() << '\n';
    return kValidation;
  }
  catch (const IoError &e)
  {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  catch (const std::exception &e)
  {
    err << "error: invalid input: " << e.what() << '\n';
    return kValidation;
  }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
  {
    args.emplace_back(argv[i]);
  }
  return run(args, out, err);
}

}  // namespace zeno::cli
