#pragma once

// Replication kernels. Replication r always runs with seed base_seed + r, so the
// OpenMP kernel and the serial reference produce identical per-replication
// values regardless of thread count or scheduling.

#include <cmath>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include <omp.h>

namespace infarm {

/// Serial reference: out[r] = fn(base_seed + r).
template <class Fn>
auto replicate_serial(std::uint64_t reps, std::uint64_t base_seed, Fn&& fn) {
  using T = decltype(fn(base_seed));
  std::vector<T> out;
  out.reserve(reps);
  for (std::uint64_t r = 0; r < reps; ++r) out.push_back(fn(base_seed + r));
  return out;
}

/// OpenMP kernel with the same contract as replicate_serial. jobs <= 0 uses the
/// OpenMP default width. The first exception thrown by any replication is rethrown.
template <class Fn>
auto replicate(std::uint64_t reps, std::uint64_t base_seed, int jobs, Fn&& fn) {
  using T = decltype(fn(base_seed));
  std::vector<T> out(reps);
  std::exception_ptr failure;
  const int width = jobs > 0 ? jobs : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic, 16) num_threads(width)
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      out[r] = fn(base_seed + static_cast<std::uint64_t>(r));
    } catch (...) {
#pragma omp critical(infarm_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double sd = 0.0;
};

/// Mean and standard error (unbiased sample variance) with Neumaier-compensated
/// sums taken in index order.
inline MeanSe mean_and_se(std::span<const double> values) {
  MeanSe out;
  if (values.empty()) return out;
  auto compensated = [&](auto term) {
    double sum = 0.0, carry = 0.0;
    for (double x : values) {
      const double y = term(x);
      const double t = sum + y;
      carry += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
      sum = t;
    }
    return sum + carry;
  };
  const double n = static_cast<double>(values.size());
  out.mean = compensated([](double x) { return x; }) / n;
  if (values.size() > 1) {
    const double m = out.mean;
    const double ss = compensated([m](double x) { return (x - m) * (x - m); });
    out.sd = std::sqrt(ss / (n - 1.0));
    out.se = out.sd / std::sqrt(n);
  }
  return out;
}

}  // namespace infarm
