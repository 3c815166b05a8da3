// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_CLI_HPP
#define ZENO_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace zeno::cli
{

enum ExitCode : int
{
  kSuccess = 0,
  kUsage = 2,
  kValidation = 3,
  kIo = 4,
};

// zeno-sim <subcommand> [--key value]... [--config path] [--out dir] [--format csv,json,svg]
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace zeno::cli

#endif  // ZENO_CLI_HPP
