#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace infarm {

/// Running sufficient statistics of one arm's rewards.
struct ArmState {
  std::size_t index = 0;  // 1-based, in order of opening
  std::uint64_t t = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  /// Accumulates one reward. Throws InputError on a negative or non-finite reward.
  void add(double reward);
};

ArmState update_arm(ArmState state, double reward);

struct MeanSd {
  double mean;
  double sd;
};

/// Sample mean and biased (divide-by-t) standard deviation; t = 0 throws UndefinedStatistic.
MeanSd arm_mean_and_sd(const ArmState& state);

class Action {
 public:
  enum class Kind { play, new_arm };

  static Action play(std::size_t arm) { return Action(Kind::play, arm); }
  static Action new_arm() { return Action(Kind::new_arm, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_new_arm() const noexcept { return kind_ == Kind::new_arm; }
  /// 1-based arm index; 0 for NewArm.
  std::size_t arm() const noexcept { return arm_; }

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Action(Kind kind, std::size_t arm) : kind_(kind), arm_(arm) {}
  Kind kind_;
  std::size_t arm_;
};

/// Everything a policy may observe about the game so far.
class GameState {
 public:
  explicit GameState(std::uint64_t horizon);

  std::uint64_t horizon() const noexcept { return horizon_; }
  std::uint64_t plays() const noexcept { return plays_; }
  std::uint64_t remaining() const noexcept { return horizon_ - plays_; }
  std::size_t arm_count() const noexcept { return arms_.size(); }
  double total_reward() const noexcept { return total_reward_; }

  /// 1-based access.
  const ArmState& arm(std::size_t k) const { return arms_.at(k - 1); }
  const std::vector<ArmState>& arms() const noexcept { return arms_; }

  /// Opens the next arm and returns its index.
  std::size_t open_arm();

  /// Records one reward from arm k. Throws ContractViolation for unopened k or
  /// when the horizon is already exhausted.
  void record(std::size_t k, double reward);

 private:
  std::uint64_t horizon_;
  std::uint64_t plays_ = 0;
  double total_reward_ = 0.0;
  std::vector<ArmState> arms_;
};

/// One simulated game.
struct RunRecord {
  std::size_t arms_opened = 0;
  std::vector<std::uint64_t> pulls;
  std::vector<double> true_means;
  double realized_regret = 0.0;
};

/// Σ n_k μ_k over the opened arms.
double realized_regret(const std::vector<std::uint64_t>& pulls, const std::vector<double>& means);

}  // namespace infarm
