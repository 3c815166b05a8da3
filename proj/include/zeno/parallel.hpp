// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_PARALLEL_HPP
#define ZENO_PARALLEL_HPP

#include <cstddef>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace zeno
{

// Every sweep kernel takes one of these. The serial path is the reference the
// tests compare against; both paths run the same per-point body, so results are
// bit-identical regardless of thread count.
enum class Execution
{
  serial,
  parallel
};

// Runs body(i) for i in [0, count). Exceptions thrown inside the parallel region
// are captured and the first one is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Execution exec, Body &&body)
{
  if (exec == Execution::serial)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      body(i);
    }
    return;
  }
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i)
  {
    try
    {
      body(static_cast<std::size_t>(i));
    }
    catch (...)
    {
#pragma omp critical(zeno_parallel_for_failure)
      if (!failure)
      {
        failure = std::current_exception();
      }
    }
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

inline int max_threads()
{
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace zeno

#endif  // ZENO_PARALLEL_HPP
