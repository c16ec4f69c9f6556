// Wall-clock comparison of the OpenMP replication kernel against the serial
// reference on a Table 1 style workload. Also confirms the two agree exactly.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "infarm/engine.hpp"
#include "infarm/oracle.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t reps = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  const std::uint64_t n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 10000;

  infarm::ExperimentConfig config;
  config.policy = infarm::parse_policy_spec("cbt:zeta=auto");
  config.n = n;
  config.reps = reps;
  config.base_seed = 7;

  infarm::MonteCarloSummary serial, parallel;
  const double t_serial = time_ms([&] { serial = infarm::monte_carlo_serial(config); });
  const double t_parallel = time_ms([&] { parallel = infarm::monte_carlo(config); });
  std::printf("monte_carlo  n=%llu reps=%llu threads=%d\n", static_cast<unsigned long long>(n),
              static_cast<unsigned long long>(reps), omp_get_max_threads());
  std::printf("  serial   %10.1f ms  mean=%.6f\n", t_serial, serial.mean_regret);
  std::printf("  openmp   %10.1f ms  mean=%.6f  speedup=%.2fx  identical=%s\n", t_parallel, parallel.mean_regret,
              t_serial / t_parallel,
              serial.mean_regret == parallel.mean_regret && serial.se == parallel.se ? "yes" : "no");

  const auto model = infarm::RewardModel::bernoulli();
  const double zeta = std::sqrt(2.0 / 1e5);
  const double b = infarm::loglog_scale(100000);
  const double t_tail = time_ms([&] {
    auto est = infarm::stopping_tail_estimate(model, 0.5 * zeta, zeta, b, b, 100000, reps, 11);
    std::printf("tail estimate n=1e5 P=%.4f\n", est.probability);
  });
  std::printf("  openmp   %10.1f ms\n", t_tail);
  return 0;
}
