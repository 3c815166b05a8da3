// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_ERROR_HPP
#define ZENO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zeno
{

// Raised when a computed object violates one of its stated invariants
// (non-unitary propagator, negative density-matrix eigenvalue, ...). The
// message always starts with the invariant's name.
class InvariantError : public std::runtime_error
{
public:
  InvariantError(const std::string &invariant, const std::string &detail)
    : std::runtime_error(invariant + ": " + detail), invariant_(invariant)
  {
  }

  const std::string &invariant() const { return invariant_; }

private:
  std::string invariant_;
};

// Filesystem failures while emitting results.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace zeno

#endif  // ZENO_ERROR_HPP
