#include "infarm/priors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "infarm/errors.hpp"
#include "spec_parse.hpp"

namespace infarm {
namespace {

constexpr double pi = std::numbers::pi;

// x − sin x without cancellation near 0.
double x_minus_sin(double x) {
  if (std::abs(x) > 0.5) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

// cos x − 1 + x²/2 without cancellation near 0.
double cos_remainder(double x) {
  if (std::abs(x) > 0.5) return std::cos(x) - 1.0 + 0.5 * x * x;
  const double x2 = x * x;
  double term = x2 * x2 / 24.0;
  double sum = term;
  for (int k = 3; k < 13; ++k) {
    term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
    sum += term;
  }
  return sum;
}

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate(f, a, b, 1e-13, &error);
  if (!std::isfinite(value)) throw ConfigError("integral does not converge");
  return value;
}

}  // namespace

PriorModel PriorModel::uniform() { return {Kind::uniform, 1.0, 1.0, 1.0}; }
PriorModel PriorModel::sine() { return {Kind::sine, pi * pi / 2.0, 2.0, 1.0}; }
PriorModel PriorModel::one_minus_cos() { return {Kind::one_minus_cos, pi * pi / 2.0, 3.0, 1.0}; }

PriorModel PriorModel::power_law(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ConfigError("power-law prior needs alpha > 0 and beta > 0");
  return {Kind::power_law, alpha, beta, std::pow(beta / alpha, 1.0 / beta)};
}

PriorModel PriorModel::power_law(double alpha, double beta, double cap) {
  auto prior = power_law(alpha, beta);
  const double mass = alpha * std::pow(cap, beta) / beta;
  if (!(std::abs(mass - 1.0) <= 1e-6)) {
    throw ConfigError("power-law density alpha*mu^(beta-1) on (0, " + detail::format_number(cap) +
                      ") has mass " + detail::format_number(mass) + ", not 1");
  }
  return prior;
}

double PriorModel::density(double mu) const {
  if (!(mu > 0.0) || mu >= cap_) return 0.0;
  switch (kind_) {
    case Kind::uniform:
      return 1.0;
    case Kind::sine:
      return pi / 2.0 * std::sin(pi * mu);
    case Kind::one_minus_cos:
      return 1.0 - std::cos(pi * mu);
    case Kind::power_law:
      return alpha_ * std::pow(mu, beta_ - 1.0);
  }
  return 0.0;
}

double PriorModel::p(double zeta) const {
  if (!(zeta > 0.0)) return 0.0;
  if (zeta >= cap_) return 1.0;
  switch (kind_) {
    case Kind::uniform:
      return zeta;
    case Kind::sine: {
      const double s = std::sin(pi * zeta / 2.0);
      return s * s;
    }
    case Kind::one_minus_cos:
      return x_minus_sin(pi * zeta) / pi;
    case Kind::power_law:
      return alpha_ / beta_ * std::pow(zeta, beta_);
  }
  return 0.0;
}

double PriorModel::v(double zeta) const {
  if (!(zeta > 0.0)) return 0.0;
  if (zeta > cap_) return v(cap_) + (zeta - cap_);
  switch (kind_) {
    case Kind::uniform:
      return zeta * zeta / 2.0;
    case Kind::sine:
      return x_minus_sin(pi * zeta) / (2.0 * pi);
    case Kind::one_minus_cos:
      return cos_remainder(pi * zeta) / (pi * pi);
    case Kind::power_law:
      return alpha_ / (beta_ * (beta_ + 1.0)) * std::pow(zeta, beta_ + 1.0);
  }
  return 0.0;
}

double PriorModel::mean() const { return cap_ - v(cap_); }

double PriorModel::quantile(double u) const {
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return cap_;
  switch (kind_) {
    case Kind::uniform:
      return u;
    case Kind::sine:
      return std::acos(1.0 - 2.0 * u) / pi;
    case Kind::power_law:
      return cap_ * std::pow(u, 1.0 / beta_);
    case Kind::one_minus_cos: {
      // Safeguarded Newton on p(ζ) = u; p ~ π²ζ³/6 near 0 seeds the iteration.
      double lo = 0.0, hi = 1.0;
      double z = std::min(0.5, std::cbrt(6.0 * u / (pi * pi)));
      for (int i = 0; i < 100; ++i) {
        const double f = p(z) - u;
        if (f > 0.0) hi = z; else lo = z;
        const double d = density(z);
        double next = d > 0.0 ? z - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - z) <= 1e-15 * std::max(z, 1e-300)) return next;
        z = next;
      }
      return z;
    }
  }
  return u;
}

double PriorModel::sample(Rng& rng) const { return quantile(uniform01(rng)); }

std::string PriorModel::name() const {
  switch (kind_) {
    case Kind::uniform:
      return "uniform";
    case Kind::sine:
      return "sine";
    case Kind::one_minus_cos:
      return "one-minus-cos";
    case Kind::power_law:
      return "power:alpha=" + detail::format_number(alpha_) + ",beta=" + detail::format_number(beta_);
  }
  return "?";
}

PriorModel parse_prior(const std::string& text) {
  const auto s = detail::parse_spec_string(text);
  if (s.head == "uniform") return PriorModel::uniform();
  if (s.head == "sine" || s.head == "sin") return PriorModel::sine();
  if (s.head == "one-minus-cos" || s.head == "cos") return PriorModel::one_minus_cos();
  if (s.head == "power") {
    detail::expect_keys(s, "alpha", "beta", "cap");
    const double alpha = detail::get_number(s, "alpha", 1.0);
    const double beta = detail::get_number(s, "beta", 1.0);
    if (detail::has(s, "cap")) return PriorModel::power_law(alpha, beta, detail::get_number(s, "cap", 1.0));
    return PriorModel::power_law(alpha, beta);
  }
  throw ConfigError("unknown prior '" + text + "'");
}

double sample_mu(const PriorModel& prior, Rng& rng) { return prior.sample(rng); }
double p_of(const PriorModel& prior, double zeta) { return prior.p(zeta); }
double v_of(const PriorModel& prior, double zeta) { return prior.v(zeta); }

double p_numeric(const PriorModel& prior, double zeta) {
  const double top = std::min(zeta, prior.support_max());
  return integrate([&](double mu) { return prior.density(mu); }, 0.0, top);
}

double v_numeric(const PriorModel& prior, double zeta) {
  const double top = std::min(zeta, prior.support_max());
  const double inside = integrate([&](double mu) { return (zeta - mu) * prior.density(mu); }, 0.0, top);
  return inside;
}

double lambda_of(const PriorModel& prior, const RewardModel& rewards) {
  if (rewards.kind() == RewardModel::Kind::dataset_replay) {
    throw ConfigError("lambda needs a synthetic reward model");
  }
  if (prior.support_max() > rewards.max_mean()) {
    throw ConfigError("prior support exceeds the admissible means of " + rewards.name());
  }
  if (rewards.kind() == RewardModel::Kind::bernoulli) return 1.0;
  const double lambda = integrate(
      [&](double mu) { return rewards.conditional_positive_mean(mu) * prior.density(mu); }, 0.0,
      prior.support_max());
  if (!(lambda > 0.0)) throw ConfigError("lambda integral is not positive");
  return lambda;
}

double optimal_target(const PriorModel& prior, double lambda, std::uint64_t n) {
  if (!(lambda > 0.0) || n == 0) throw ConfigError("optimal target needs lambda > 0 and n > 0");
  const double target = lambda / static_cast<double>(n);
  const double top = prior.support_max();
  const double vmax = prior.v(top);
  if (target > vmax * (1.0 + 1e-15)) {
    throw HorizonTooSmall("v(zeta) = lambda/n has no root in the prior support for n = " + std::to_string(n));
  }
  if (target >= vmax) return top;
  double lo = 0.0, hi = top;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (prior.v(mid) < target) lo = mid; else hi = mid;
  }
  const double vlo = target - prior.v(lo);
  const double vhi = prior.v(hi) - target;
  return vlo <= vhi ? lo : hi;
}

double asymptotic_constant(double alpha, double beta, double lambda) {
  return std::pow(lambda * beta * (beta + 1.0) / alpha, 1.0 / (beta + 1.0));
}

double asymptotic_target(double alpha, double beta, double lambda, std::uint64_t n) {
  return asymptotic_constant(alpha, beta, lambda) * std::pow(static_cast<double>(n), -1.0 / (beta + 1.0));
}

double regret_lower_bound(double alpha, double beta, double lambda, std::uint64_t n) {
  return asymptotic_constant(alpha, beta, lambda) * std::pow(static_cast<double>(n), beta / (beta + 1.0));
}

double i_beta(double beta) {
  if (!(beta > 0.0)) throw DomainError("I_beta needs beta > 0");
  const double q = 1.0 / (beta + 1.0);
  return std::pow(q, q) * (2.0 - q * q) * std::tgamma(2.0 - beta * q);
}

double r_n_of(const PriorModel& prior, double lambda, std::uint64_t n, double zeta) {
  const double p = prior.p(zeta);
  if (!(p > 0.0)) throw DomainError("r_n needs p(zeta) > 0");
  const double nn = static_cast<double>(n);
  return lambda / p + nn * zeta - nn * prior.v(zeta) / p;
}

}  // namespace infarm
