// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_PARALLEL_HPP
#define CAVDDM_PARALLEL_HPP

#include <exception>
#include <limits>

namespace cavddm
{

// OpenMP loop over [0, n) that carries exceptions out of the parallel region. When several
// iterations throw, the one with the lowest index is rethrown so failures are reproducible.
template <typename F>
void parallel_for(int n, F &&body)
{
  std::exception_ptr err;
  int err_index = std::numeric_limits<int>::max();
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; i++)
  {
    try
    {
      body(i);
    }
    catch (...)
    {
#pragma omp critical(cavddm_parallel_for_error)
      {
        if (i < err_index)
        {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  }
  if (err)
  {
    std::rethrow_exception(err);
  }
}

}  // namespace cavddm

#endif  // CAVDDM_PARALLEL_HPP
