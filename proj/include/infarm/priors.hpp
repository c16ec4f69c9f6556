#pragma once

#include <cstdint>
#include <string>

#include "infarm/rewards.hpp"
#include "infarm/rng.hpp"

namespace infarm {

/// Prior density g of the arm means, with its CDF p(ζ) = P_g(μ ≤ ζ) and
/// v(ζ) = E_g(ζ − μ)⁺ = ∫₀^ζ p.
///
/// Every variant satisfies g(μ) ~ α μ^{β−1} as μ → 0; α and β feed the
/// asymptotic target C n^{−1/(β+1)} and the UCB-F arm count.
class PriorModel {
 public:
  enum class Kind { uniform, sine, one_minus_cos, power_law };

  /// g(μ) = 1 on (0, 1); α = β = 1.
  static PriorModel uniform();
  /// g(μ) = (π/2) sin(πμ) on (0, 1); α = π²/2, β = 2.
  static PriorModel sine();
  /// g(μ) = 1 − cos(πμ) on (0, 1); α = π²/2, β = 3.
  static PriorModel one_minus_cos();
  /// g(μ) = α μ^{β−1} on (0, cap) with cap = (β/α)^{1/β}.
  static PriorModel power_law(double alpha, double beta);
  /// As above with an explicit cap; throws ConfigError unless α cap^β / β = 1 to 1e-6.
  static PriorModel power_law(double alpha, double beta, double cap);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double support_max() const noexcept { return cap_; }

  double density(double mu) const;
  /// Closed-form CDF.
  double p(double zeta) const;
  /// Closed-form ∫₀^ζ p.
  double v(double zeta) const;
  /// E_g μ.
  double mean() const;
  /// Inverse-CDF draw from one uniform.
  double sample(Rng& rng) const;
  double quantile(double u) const;

  std::string name() const;

 private:
  PriorModel(Kind kind, double alpha, double beta, double cap)
      : kind_(kind), alpha_(alpha), beta_(beta), cap_(cap) {}

  Kind kind_;
  double alpha_;
  double beta_;
  double cap_;
};

/// "uniform", "sine", "one-minus-cos", "power:alpha=2,beta=2[,cap=1]".
PriorModel parse_prior(const std::string& text);

double sample_mu(const PriorModel& prior, Rng& rng);
double p_of(const PriorModel& prior, double zeta);
double v_of(const PriorModel& prior, double zeta);

/// Tanh-sinh quadrature of the density, independent of the closed forms.
double p_numeric(const PriorModel& prior, double zeta);
/// ∫₀^ζ p_numeric.
double v_numeric(const PriorModel& prior, double zeta);

/// λ = ∫ E_μ(X | X > 0) g(μ) dμ, the mean of the first non-zero reward of a fresh arm.
/// Exactly 1 for Bernoulli rewards; ConfigError if the integral does not converge.
double lambda_of(const PriorModel& prior, const RewardModel& rewards);

/// Root ζ_n of v(ζ) = λ/n by bisection. HorizonTooSmall if λ/n > v(support max).
double optimal_target(const PriorModel& prior, double lambda, std::uint64_t n);

/// C = (λβ(β+1)/α)^{1/(β+1)}.
double asymptotic_constant(double alpha, double beta, double lambda);
/// C n^{−1/(β+1)}.
double asymptotic_target(double alpha, double beta, double lambda, std::uint64_t n);
/// Regret lower bound C n^{β/(β+1)}.
double regret_lower_bound(double alpha, double beta, double lambda, std::uint64_t n);

/// Regret inflation of the empirical target rule,
/// I_β = (1/(β+1))^{1/(β+1)} (2 − 1/(β+1)²) Γ(2 − β/(β+1)).
double i_beta(double beta);

/// Asymptotic regret of the reveal-and-accept rule with threshold ζ:
/// r_n(ζ) = λ/p(ζ) + nζ − n v(ζ)/p(ζ). DomainError when p(ζ) = 0.
double r_n_of(const PriorModel& prior, double lambda, std::uint64_t n, double zeta);

}  // namespace infarm
