// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "zeno/cli.hpp"

int main(int argc, char **argv) { return zeno::cli::run(argc, argv, std::cout, std::cerr); }
