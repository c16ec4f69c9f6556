#include "infarm/rewards.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "infarm/errors.hpp"
#include "spec_parse.hpp"

namespace infarm {

RewardModel RewardModel::bernoulli() { return RewardModel{}; }

RewardModel RewardModel::poisson() {
  RewardModel m;
  m.kind_ = Kind::poisson;
  return m;
}

RewardModel RewardModel::bounded_discrete(int support_max, PmfBuilder builder) {
  if (support_max < 2) throw ConfigError("bounded discrete rewards need support size I > 1");
  RewardModel m;
  m.kind_ = Kind::bounded_discrete;
  m.support_max_ = support_max;
  m.builder_ = std::move(builder);
  return m;
}

RewardModel RewardModel::scaled_continuous(ScaleBase base, double shape) {
  if (base == ScaleBase::gamma && !(shape > 0.0)) throw ConfigError("gamma shape must be positive");
  RewardModel m;
  m.kind_ = Kind::scaled_continuous;
  m.base_ = base;
  m.shape_ = shape;
  return m;
}

RewardModel RewardModel::dataset_replay() {
  RewardModel m;
  m.kind_ = Kind::dataset_replay;
  return m;
}

double RewardModel::max_mean() const noexcept {
  switch (kind_) {
    case Kind::bernoulli:
      return 1.0;
    case Kind::bounded_discrete:
      return static_cast<double>(support_max_);
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> RewardModel::pmf(double mu) const {
  std::vector<double> p;
  if (builder_) {
    p = builder_(mu);
    if (p.size() != static_cast<std::size_t>(support_max_) + 1) {
      throw ConfigError("pmf builder returned " + std::to_string(p.size()) + " probabilities, expected " +
                        std::to_string(support_max_ + 1));
    }
  } else {
    p.assign(support_max_ + 1, 0.0);
    p[support_max_] = mu / support_max_;
    p[0] = 1.0 - p[support_max_];
  }
  return p;
}

double RewardModel::draw(double mu, Rng& rng) const {
  if (!(mu >= 0.0) || mu > max_mean()) {
    throw InputError(name() + " rewards need mean in [0, " + std::to_string(max_mean()) + "], got " +
                     std::to_string(mu));
  }
  switch (kind_) {
    case Kind::bernoulli:
      return uniform01(rng) < mu ? 1.0 : 0.0;
    case Kind::poisson: {
      if (mu == 0.0) return 0.0;
      std::poisson_distribution<long> d(mu);
      return static_cast<double>(d(rng));
    }
    case Kind::bounded_discrete: {
      const auto p = pmf(mu);
      double u = uniform01(rng);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (u < p[i]) return static_cast<double>(i);
        u -= p[i];
      }
      return static_cast<double>(p.size() - 1);
    }
    case Kind::scaled_continuous: {
      switch (base_) {
        case ScaleBase::exponential:
          return -mu * std::log(uniform_open0(rng));
        case ScaleBase::uniform02:
          return mu * 2.0 * uniform01(rng);
        case ScaleBase::gamma: {
          std::gamma_distribution<double> d(shape_, 1.0 / shape_);
          return mu * d(rng);
        }
      }
      break;
    }
    case Kind::dataset_replay:
      throw InputError("dataset rewards are drawn from a replay stream, not from a mean");
  }
  return 0.0;
}

double RewardModel::prob_positive(double mu) const {
  switch (kind_) {
    case Kind::bernoulli:
      return mu;
    case Kind::poisson:
      return -std::expm1(-mu);
    case Kind::bounded_discrete:
      return 1.0 - pmf(mu)[0];
    case Kind::scaled_continuous:
      return mu > 0.0 ? 1.0 : 0.0;
    case Kind::dataset_replay:
      break;
  }
  throw ConfigError("P(X > 0) is not defined for dataset rewards");
}

double RewardModel::conditional_positive_mean(double mu) const {
  switch (kind_) {
    case Kind::bernoulli:
      return 1.0;
    case Kind::poisson:
      // μ / (1 − e^{−μ}) → 1 as μ → 0
      return mu < 1e-8 ? 1.0 + mu / 2.0 : mu / -std::expm1(-mu);
    case Kind::bounded_discrete: {
      const auto p = pmf(mu);
      double mass = 0.0, first = 0.0;
      for (std::size_t i = 1; i < p.size(); ++i) {
        mass += p[i];
        first += static_cast<double>(i) * p[i];
      }
      return mass > 0.0 ? first / mass : 1.0;
    }
    case Kind::scaled_continuous:
      return mu;
    case Kind::dataset_replay:
      break;
  }
  throw ConfigError("E(X | X > 0) is not defined for dataset rewards");
}

std::string RewardModel::name() const {
  switch (kind_) {
    case Kind::bernoulli:
      return "bernoulli";
    case Kind::poisson:
      return "poisson";
    case Kind::bounded_discrete:
      return "discrete:I=" + std::to_string(support_max_);
    case Kind::scaled_continuous:
      switch (base_) {
        case ScaleBase::exponential:
          return "continuous:base=exponential";
        case ScaleBase::uniform02:
          return "continuous:base=uniform";
        case ScaleBase::gamma:
          return "continuous:base=gamma,k=" + detail::format_number(shape_);
      }
      break;
    case Kind::dataset_replay:
      return "dataset";
  }
  return "?";
}

RewardModel parse_reward_model(const std::string& text) {
  const auto parsed = detail::parse_spec_string(text);
  if (parsed.head == "bernoulli") return RewardModel::bernoulli();
  if (parsed.head == "poisson") return RewardModel::poisson();
  if (parsed.head == "dataset") return RewardModel::dataset_replay();
  if (parsed.head == "discrete") {
    return RewardModel::bounded_discrete(static_cast<int>(detail::get_integer(parsed, "I", 2)));
  }
  if (parsed.head == "continuous") {
    const std::string base = detail::get_string(parsed, "base", "exponential");
    if (base == "exponential") return RewardModel::scaled_continuous(ScaleBase::exponential);
    if (base == "uniform") return RewardModel::scaled_continuous(ScaleBase::uniform02);
    if (base == "gamma") {
      return RewardModel::scaled_continuous(ScaleBase::gamma, detail::get_number(parsed, "k", 2.0));
    }
    throw ConfigError("unknown continuous base '" + base + "'");
  }
  throw ConfigError("unknown reward model '" + text + "'");
}

}  // namespace infarm
