#pragma once

#include <functional>
#include <string>
#include <vector>

#include "infarm/rng.hpp"

namespace infarm {

/// Base distribution Z (mean 1, non-negative) for rewards distributed as μZ.
enum class ScaleBase { exponential, uniform02, gamma };

/// Builds the pmf p_0..p_I of a reward on {0, ..., I} with mean μ.
using PmfBuilder = std::function<std::vector<double>(double mu)>;

/// Reward distribution F_μ of an arm with mean μ.
class RewardModel {
 public:
  enum class Kind { bernoulli, poisson, bounded_discrete, scaled_continuous, dataset_replay };

  static RewardModel bernoulli();
  static RewardModel poisson();
  /// Support {0, ..., I}. Without a builder the reward is I·Bernoulli(μ/I).
  static RewardModel bounded_discrete(int support_max, PmfBuilder builder = {});
  /// X = μZ. For gamma, `shape` is the shape parameter k and Z ~ Gamma(k, 1/k).
  static RewardModel scaled_continuous(ScaleBase base = ScaleBase::exponential, double shape = 1.0);
  static RewardModel dataset_replay();

  Kind kind() const noexcept { return kind_; }
  ScaleBase scale_base() const noexcept { return base_; }
  int support_max() const noexcept { return support_max_; }

  /// Largest admissible μ (infinity when unbounded).
  double max_mean() const noexcept;

  /// One draw from F_μ. Throws InputError for μ outside the model's range and
  /// for DatasetReplay, whose draws come from a ReplayStream.
  double draw(double mu, Rng& rng) const;

  /// P_μ(X > 0).
  double prob_positive(double mu) const;

  /// E_μ(X | X > 0); used for the experimentation cost λ.
  double conditional_positive_mean(double mu) const;

  std::string name() const;

 private:
  Kind kind_ = Kind::bernoulli;
  ScaleBase base_ = ScaleBase::exponential;
  double shape_ = 1.0;
  int support_max_ = 1;
  PmfBuilder builder_;

  std::vector<double> pmf(double mu) const;
};

/// Parses "bernoulli", "poisson", "discrete:I=4", "continuous[:base=exponential|uniform|gamma[,k=2]]".
RewardModel parse_reward_model(const std::string& text);

}  // namespace infarm
