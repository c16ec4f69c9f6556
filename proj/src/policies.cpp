#include "infarm/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infarm/errors.hpp"

namespace infarm {

double cbt_bound(const ArmState& state, double b, double c) {
  const auto [mean, sd] = arm_mean_and_sd(state);
  return std::max(mean / b, mean - c * sd / std::sqrt(static_cast<double>(state.t)));
}

double loglog_scale(std::uint64_t n) {
  if (n < 3) return 1.0;
  return std::max(1.0, std::log(std::log(static_cast<double>(n))));
}

// --- CBT --------------------------------------------------------------------

CbtPolicy::CbtPolicy(double zeta, double b, double c) : zeta_(zeta), b_(b), c_(c) {
  if (!(zeta >= 0.0)) throw ConfigError("CBT target must be non-negative");
  if (!(b > 0.0) || !(c > 0.0)) throw ConfigError("CBT needs b > 0 and c > 0");
}

Action CbtPolicy::decide(const GameState& game, Rng&) {
  const std::size_t k = game.arm_count();
  if (k == 0) return Action::new_arm();
  const ArmState& arm = game.arm(k);
  if (arm.t == 0) return Action::play(k);
  return cbt_bound(arm, b_, c_) > zeta_ ? Action::new_arm() : Action::play(k);
}

// --- empirical CBT ----------------------------------------------------------

EmpiricalCbtPolicy::EmpiricalCbtPolicy(double b, double c) : b_(b), c_(c) {
  if (!(b > 0.0) || !(c > 0.0)) throw ConfigError("empirical CBT needs b > 0 and c > 0");
}

double EmpiricalCbtPolicy::threshold(const GameState& game) {
  return game.total_reward() / static_cast<double>(game.horizon());
}

Action EmpiricalCbtPolicy::decide(const GameState& game, Rng&) {
  if (ordered_.empty()) return Action::new_arm();
  const auto& [bound, arm] = *ordered_.begin();
  return bound <= threshold(game) ? Action::play(arm) : Action::new_arm();
}

void EmpiricalCbtPolicy::observe(const GameState& game, std::size_t arm, double) {
  if (bound_.size() < arm) bound_.resize(arm, std::numeric_limits<double>::quiet_NaN());
  double& cached = bound_[arm - 1];
  if (!std::isnan(cached)) ordered_.erase({cached, arm});
  cached = cbt_bound(game.arm(arm), b_, c_);
  ordered_.emplace(cached, arm);
}

// --- binary-reward strategies ----------------------------------------------

void BinaryRewardPolicy::observe(const GameState& game, std::size_t arm, double reward) {
  if (reward != 0.0 && reward != 1.0) {
    throw InputError("binary-reward strategy received reward " + std::to_string(reward));
  }
  on_reward(game, arm, reward == 1.0);
}

std::size_t BinaryRewardPolicy::best_success_proportion(const GameState& game) {
  std::size_t best = 0;
  double best_share = -1.0;
  for (const auto& a : game.arms()) {
    if (a.t == 0) continue;
    const double share = (static_cast<double>(a.t) - a.sum) / static_cast<double>(a.t);
    if (share > best_share) {
      best_share = share;
      best = a.index;
    }
  }
  if (best == 0) throw ContractViolation("no played arm to commit to");
  return best;
}

namespace {
std::uint64_t failures(const ArmState& a) { return static_cast<std::uint64_t>(a.sum); }
std::uint64_t successes(const ArmState& a) { return a.t - failures(a); }

Action continue_or_leave(const GameState& game, bool& leave) {
  if (game.arm_count() == 0 || leave) {
    leave = false;
    return Action::new_arm();
  }
  return Action::play(game.arm_count());
}
}  // namespace

FFailurePolicy::FFailurePolicy(std::uint64_t f) : f_(f) {
  if (f == 0) throw ConfigError("f-failure needs f >= 1");
}

void FFailurePolicy::on_reward(const GameState& game, std::size_t arm, bool failure) {
  if (failure && failures(game.arm(arm)) >= f_) leave_current_ = true;
}

Action FFailurePolicy::decide(const GameState& game, Rng&) { return continue_or_leave(game, leave_current_); }

TwoTargetPolicy::TwoTargetPolicy(std::uint64_t f, std::uint64_t s1, std::uint64_t sf) : f_(f), s1_(s1), sf_(sf) {
  if (f < 2) throw ConfigError("two-target needs f >= 2");
}

void TwoTargetPolicy::on_reward(const GameState& game, std::size_t arm, bool failure) {
  if (committed_ || !failure) return;
  const ArmState& a = game.arm(arm);
  const auto fails = failures(a);
  if (fails == 1 && successes(a) < s1_) leave_current_ = true;
  if (fails == f_) {
    if (successes(a) < sf_) leave_current_ = true;
    else committed_ = arm;
  }
}

Action TwoTargetPolicy::decide(const GameState& game, Rng&) {
  if (committed_) return Action::play(*committed_);
  return continue_or_leave(game, leave_current_);
}

SRunPolicy::SRunPolicy(std::uint64_t s) : s_(s) {
  if (s == 0) throw ConfigError("s-run needs s >= 1");
}

void SRunPolicy::on_reward(const GameState& game, std::size_t arm, bool failure) {
  if (committed_) return;
  if (failure) {
    leave_current_ = true;
  } else if (game.arm(arm).t == s_) {
    committed_ = arm;
  }
}

Action SRunPolicy::decide(const GameState& game, Rng&) {
  if (committed_) return Action::play(*committed_);
  if (leave_current_ && game.arm_count() >= s_) {
    committed_ = best_success_proportion(game);
    return Action::play(*committed_);
  }
  return continue_or_leave(game, leave_current_);
}

NonRecallSRunPolicy::NonRecallSRunPolicy(std::uint64_t s) : s_(s) {
  if (s == 0) throw ConfigError("non-recalling s-run needs s >= 1");
}

void NonRecallSRunPolicy::on_reward(const GameState& game, std::size_t arm, bool failure) {
  if (committed_) return;
  if (failure) {
    leave_current_ = true;
  } else if (game.arm(arm).t == s_) {
    committed_ = arm;
  }
}

Action NonRecallSRunPolicy::decide(const GameState& game, Rng&) {
  if (committed_) return Action::play(*committed_);
  return continue_or_leave(game, leave_current_);
}

MLearningPolicy::MLearningPolicy(std::uint64_t m) : m_(m) {
  if (m == 0) throw ConfigError("m-learning needs m >= 1");
}

void MLearningPolicy::on_reward(const GameState&, std::size_t, bool failure) {
  if (!committed_ && failure) leave_current_ = true;
}

Action MLearningPolicy::decide(const GameState& game, Rng&) {
  if (committed_) return Action::play(*committed_);
  if (leave_current_ && game.plays() >= m_) {
    committed_ = best_success_proportion(game);
    return Action::play(*committed_);
  }
  return continue_or_leave(game, leave_current_);
}

// --- UCB-F ------------------------------------------------------------------

UcbfPolicy::UcbfPolicy(std::size_t arms) : arms_(arms) {
  if (arms == 0) throw ConfigError("UCB-F needs K >= 1");
}

double UcbfPolicy::index(const ArmState& arm, std::uint64_t plays) {
  if (arm.t == 0) return -std::numeric_limits<double>::infinity();
  const double explore = std::sqrt(std::log(static_cast<double>(std::max<std::uint64_t>(plays, 1))));
  const auto [mean, sd] = arm_mean_and_sd(arm);
  const double t = static_cast<double>(arm.t);
  return mean - std::sqrt(2.0 * sd * sd * explore / t) - explore / t;
}

Action UcbfPolicy::decide(const GameState& game, Rng&) {
  if (game.arm_count() < arms_) return Action::new_arm();
  std::size_t best = 1;
  double best_index = std::numeric_limits<double>::infinity();
  for (const auto& a : game.arms()) {
    const double idx = index(a, game.plays());
    if (idx < best_index) {
      best_index = idx;
      best = a.index;
    }
  }
  return Action::play(best);
}

// --- ε-family ---------------------------------------------------------------

EpsilonPolicy::EpsilonPolicy(EpsilonVariant variant, double epsilon, std::size_t pool)
    : variant_(variant), epsilon_(epsilon), pool_(pool) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ConfigError("epsilon must lie in (0, 1]");
  if (pool == 0) throw ConfigError("epsilon strategies need a non-empty arm pool");
}

std::optional<std::size_t> EpsilonPolicy::best_arm(const GameState& game) {
  std::optional<std::size_t> best;
  double best_mean = std::numeric_limits<double>::infinity();
  for (const auto& a : game.arms()) {
    if (a.t == 0) continue;
    const double mean = a.sum / static_cast<double>(a.t);
    if (mean < best_mean) {
      best_mean = mean;
      best = a.index;
    }
  }
  return best;
}

Action EpsilonPolicy::decide(const GameState& game, Rng& rng) {
  bool explore = false;
  switch (variant_) {
    case EpsilonVariant::greedy:
      explore = uniform01(rng) < epsilon_;
      break;
    case EpsilonVariant::first:
      explore = static_cast<double>(game.plays()) < epsilon_ * static_cast<double>(game.horizon());
      break;
    case EpsilonVariant::decreasing:
      explore = uniform01(rng) < std::min(1.0, epsilon_ / static_cast<double>(game.plays() + 1));
      break;
  }
  const auto best = best_arm(game);
  if (explore || !best) {
    const std::size_t opened = game.arm_count();
    const auto pick = static_cast<std::size_t>(uniform_index(rng, std::max(pool_, opened)));
    return pick < opened ? Action::play(pick + 1) : Action::new_arm();
  }
  return Action::play(*best);
}

}  // namespace infarm
