#include "infarm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infarm/errors.hpp"
#include "infarm/parallel.hpp"

namespace infarm {

IdealizedCbtSample idealized_cbt_regret(const PriorModel& prior, double lambda, std::uint64_t n, double zeta,
                                        Rng& rng) {
  if (!(prior.p(zeta) > 0.0)) throw DomainError("idealized CBT needs p(zeta) > 0");
  IdealizedCbtSample out;
  do {
    ++out.arms;
    out.accepted_mean = prior.sample(rng);
  } while (out.accepted_mean > zeta);
  out.regret = lambda * static_cast<double>(out.arms) + static_cast<double>(n) * out.accepted_mean;
  return out;
}

IdealizedOutcome idealized_empirical_cbt(const PriorModel& prior, double lambda, std::uint64_t n, Rng& rng) {
  if (!(lambda > 0.0) || n == 0) throw DomainError("idealized empirical CBT needs lambda > 0 and n > 0");
  const double step = lambda / static_cast<double>(n);
  IdealizedOutcome out;
  out.best_mean = std::numeric_limits<double>::infinity();
  do {
    ++out.arms;
    out.best_mean = std::min(out.best_mean, prior.sample(rng));
  } while (out.best_mean > static_cast<double>(out.arms) * step);
  out.regret = lambda * static_cast<double>(out.arms) + static_cast<double>(n) * out.best_mean;
  return out;
}

std::vector<double> idealized_empirical_stop_distribution(const PriorModel& prior, double lambda, std::uint64_t n,
                                                          std::uint64_t k_max) {
  const double step = lambda / static_cast<double>(n);
  std::vector<double> pk(k_max);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const double kk = static_cast<double>(k);
    const double survive_prev = std::pow(1.0 - prior.p((kk - 1.0) * step), kk - 1.0);
    const double survive = std::pow(1.0 - prior.p(kk * step), kk);
    pk[k - 1] = survive_prev - survive;
  }
  return pk;
}

SeriesResult theorem_a_series(double alpha, double beta, double lambda, std::uint64_t n, std::uint64_t k_max,
                              double relative_tail) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(lambda > 0.0) || n == 0) {
    throw DomainError("series needs alpha, beta, lambda, n > 0");
  }
  const double nb = std::pow(static_cast<double>(n), -beta);
  const double rate = alpha * std::pow(lambda, beta) / beta * nb;
  const double weight = alpha * std::pow(lambda, beta + 1.0) / beta * nb * (2.0 * beta + 2.0 - 1.0 / (beta + 1.0));
  auto term = [&](double k) {
    const double kp = std::pow(k, beta + 1.0);
    return std::exp(-rate * kp) * weight * kp;
  };
  // Summand ∝ x e^{−x} in x = rate·k^{β+1}; it decreases once x > 1.
  const double mode = std::pow(1.0 / rate, 1.0 / (beta + 1.0));

  SeriesResult out;
  double sum = 0.0, carry = 0.0;
  double prev = 0.0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const double t = term(static_cast<double>(k));
    const double s = sum + t;
    carry += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    out.terms = k;
    if (static_cast<double>(k) > mode + 1.0 && prev > 0.0) {
      // Beyond the mode the term ratio keeps shrinking, so the tail is bounded
      // by a geometric series with the current ratio.
      const double ratio = t / prev;
      if (ratio < 1.0) {
        const double next = term(static_cast<double>(k + 1));
        const double tail = next / (1.0 - ratio);
        if (tail <= relative_tail * (sum + carry)) {
          out.value = sum + carry;
          return out;
        }
      }
    }
    prev = t;
  }
  throw TailBoundError("series tail not below " + std::to_string(relative_tail) + " of the sum after " +
                       std::to_string(k_max) + " terms");
}

namespace {
bool crosses(double s, double sum_sq, double t, double zeta, double b, double c) {
  if (s > b * t * zeta) return true;
  const double var = std::max(0.0, sum_sq / t - (s / t) * (s / t));
  return s > t * zeta + c * std::sqrt(var) * std::sqrt(t);
}
}  // namespace

bool stops_within_stepwise(const RewardModel& model, double mu, double zeta, double b, double c,
                           std::uint64_t horizon, Rng& rng) {
  double s = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const double x = model.draw(mu, rng);
    s += x;
    sum_sq += x * x;
    if (crosses(s, sum_sq, static_cast<double>(t), zeta, b, c)) return true;
  }
  return false;
}

bool stops_within(const RewardModel& model, double mu, double zeta, double b, double c, std::uint64_t horizon,
                  Rng& rng) {
  if (model.kind() != RewardModel::Kind::bernoulli) {
    return stops_within_stepwise(model, mu, zeta, b, c, horizon, rng);
  }
  if (mu <= 0.0) return false;
  // With S_t fixed both boundaries grow in t, so only a reward of 1 can cross.
  double s = 0.0;
  std::uint64_t t = 0;
  while (true) {
    const std::uint64_t zeros = geometric_failures(rng, mu);
    if (zeros >= horizon - t) return false;
    t += zeros + 1;
    s += 1.0;
    if (crosses(s, s, static_cast<double>(t), zeta, b, c)) return true;
    if (t >= horizon) return false;
  }
}

TailEstimate stopping_tail_estimate(const RewardModel& model, double mu, double zeta, double b, double c,
                                    std::uint64_t horizon, std::uint64_t reps, std::uint64_t base_seed, int jobs) {
  if (!(zeta > 0.0) || !(mu >= 0.0)) throw DomainError("tail estimate needs zeta > 0 and mu >= 0");
  if (reps == 0) throw ConfigError("tail estimate needs at least one replication");
  const auto hits = replicate(reps, base_seed, jobs, [&](std::uint64_t seed) {
    Rng rng(seed);
    return stops_within(model, mu, zeta, b, c, horizon, rng) ? 1.0 : 0.0;
  });
  const auto stats = mean_and_se(hits);
  return {stats.mean, stats.se, reps};
}

}  // namespace infarm
