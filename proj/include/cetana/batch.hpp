#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cetana {

enum class ExecPolicy { Serial, Parallel };

// out[i] = fn(i) for i in [0, n). The OpenMP kernel writes each slot exactly
// once and any reduction happens over the filled vector afterwards, so its
// output is bitwise identical to the serial reference. The serial path is
// the reference implementation the tests compare against.
template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, ExecPolicy policy, Fn&& fn) {
  std::vector<T> out(n);
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

// Serial left-to-right sum; kept out of the parallel region on purpose so
// both policies reduce in the same order.
inline double sum_ordered(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

inline double mean_ordered(const std::vector<double>& values) {
  return values.empty() ? 0.0 : sum_ordered(values) / static_cast<double>(values.size());
}

}  // namespace cetana
