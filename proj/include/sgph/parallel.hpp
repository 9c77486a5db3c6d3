// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_PARALLEL_HPP
#define SGPH_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <omp.h>

namespace sgph
{

// Runs body(i) for i in [0, n) with a static OpenMP schedule. Each index must
// write to a disjoint output region. Exceptions cannot cross the parallel
// region, so the one thrown by the lowest failing index is rethrown afterwards;
// this keeps error reporting independent of the thread count.
template <typename Body>
void parallel_for(std::ptrdiff_t n, Body &&body)
{
  std::exception_ptr error;
  std::ptrdiff_t error_index = n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; i++)
  {
    try
    {
      body(i);
    }
    catch (...)
    {
#pragma omp critical(sgph_parallel_for_error)
      {
        if (i < error_index)
        {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

// Serial reference loop with the same contract as parallel_for.
template <typename Body>
void serial_for(std::ptrdiff_t n, Body &&body)
{
  for (std::ptrdiff_t i = 0; i < n; i++)
  {
    body(i);
  }
}

inline int max_threads()
{
  return omp_get_max_threads();
}

inline void set_threads(int n)
{
  if (n > 0)
  {
    omp_set_num_threads(n);
  }
}

}  // namespace sgph

#endif  // SGPH_PARALLEL_HPP
