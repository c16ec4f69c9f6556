#pragma once

#include <cstdint>
#include <vector>

#include "infarm/priors.hpp"
#include "infarm/rewards.hpp"
#include "infarm/rng.hpp"

namespace infarm {

/// Reveal-and-accept rule: each arm's mean is revealed at a cost λ; the first
/// arm with μ ≤ ζ is played n more times. Returns λK + n μ_accepted.
struct IdealizedCbtSample {
  std::uint64_t arms = 0;
  double accepted_mean = 0.0;
  double regret = 0.0;
};
IdealizedCbtSample idealized_cbt_regret(const PriorModel& prior, double lambda, std::uint64_t n, double zeta,
                                        Rng& rng);

/// Empirical-target surrogate: stop at K = inf{k : min_{i≤k} μ_i ≤ kλ/n}.
struct IdealizedOutcome {
  std::uint64_t arms = 0;
  double best_mean = 0.0;
  double regret = 0.0;  // λK + n μ_best
};
IdealizedOutcome idealized_empirical_cbt(const PriorModel& prior, double lambda, std::uint64_t n, Rng& rng);

/// Exact P(K = k) for the empirical-target surrogate, k = 1..k_max:
/// [1 − p((k−1)λ/n)]^{k−1} − [1 − p(kλ/n)]^k.
std::vector<double> idealized_empirical_stop_distribution(const PriorModel& prior, double lambda, std::uint64_t n,
                                                          std::uint64_t k_max);

struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms = 0;
};

/// Σ_k exp(−(αλ^β/β) k^{β+1} n^{−β}) (αλ^{β+1}/β) k^{β+1} n^{−β} (2β + 2 − 1/(β+1)), summed until
/// the tail past the mode is below `relative_tail` of the partial sum.
/// Throws TailBoundError if k_max terms do not reach that bound.
SeriesResult theorem_a_series(double alpha, double beta, double lambda, std::uint64_t n, std::uint64_t k_max,
                              double relative_tail = 1e-12);

/// Monte Carlo estimate of P(T_b ∧ T_c ≤ horizon) for an arm with mean μ, where
/// T_b = inf{t : S_t > b t ζ} and T_c = inf{t : S_t > t ζ + c σ̂_t √t}.
struct TailEstimate {
  double probability = 0.0;
  double se = 0.0;
  std::uint64_t reps = 0;
};
TailEstimate stopping_tail_estimate(const RewardModel& model, double mu, double zeta, double b, double c,
                                    std::uint64_t horizon, std::uint64_t reps, std::uint64_t base_seed,
                                    int jobs = 0);

/// One path of the stopping rule; true when it stops within the horizon.
/// Bernoulli paths skip runs of zeros geometrically, which cannot trigger a stop.
bool stops_within(const RewardModel& model, double mu, double zeta, double b, double c, std::uint64_t horizon,
                  Rng& rng);
/// Same event, drawing every reward; kept as the reference for the fast path.
bool stops_within_stepwise(const RewardModel& model, double mu, double zeta, double b, double c,
                           std::uint64_t horizon, Rng& rng);

}  // namespace infarm
