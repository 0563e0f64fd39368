// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Thin OpenMP wrappers. Every parallel kernel here has a serial twin with
// the same signature, and results are assembled in fixed index order, so the
// two variants produce bitwise-identical output. test_parallel locks that
// in; the bench target compares their throughput.

#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qswitch {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for i in [0, n), concurrently when OpenMP is available.
// fn must only write to state owned by index i.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
}

template <typename Fn>
void serial_for_index(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Maps i -> fn(i) into a vector, in index order.
template <typename Fn>
auto parallel_map(std::size_t n, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  parallel_for_index(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

template <typename Fn>
auto serial_map(std::size_t n, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

}  // namespace qswitch
