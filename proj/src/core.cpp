#include "infarm/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infarm/errors.hpp"

namespace infarm {

void ArmState::add(double reward) {
  if (!(reward >= 0.0) || !std::isfinite(reward)) {
    throw InputError("reward must be finite and non-negative, got " + std::to_string(reward));
  }
  ++t;
  sum += reward;
  sum_sq += reward * reward;
}

ArmState update_arm(ArmState state, double reward) {
  state.add(reward);
  return state;
}

MeanSd arm_mean_and_sd(const ArmState& state) {
  if (state.t == 0) {
    throw UndefinedStatistic("arm " + std::to_string(state.index) + " has no observations");
  }
  const double t = static_cast<double>(state.t);
  const double mean = state.sum / t;
  // Cancellation can leave a tiny negative residue.
  const double var = std::max(0.0, state.sum_sq / t - mean * mean);
  return {mean, std::sqrt(var)};
}

GameState::GameState(std::uint64_t horizon) : horizon_(horizon) {
  if (horizon == 0) throw ConfigError("horizon must be positive");
}

std::size_t GameState::open_arm() {
  ArmState a;
  a.index = arms_.size() + 1;
  arms_.push_back(a);
  return a.index;
}

void GameState::record(std::size_t k, double reward) {
  if (k == 0 || k > arms_.size()) {
    throw ContractViolation("play of unopened arm " + std::to_string(k) + " (" +
                            std::to_string(arms_.size()) + " opened)");
  }
  if (plays_ >= horizon_) throw ContractViolation("horizon exhausted");
  arms_[k - 1].add(reward);
  ++plays_;
  total_reward_ += reward;
}

double realized_regret(const std::vector<std::uint64_t>& pulls, const std::vector<double>& means) {
  double regret = 0.0;
  const std::size_t k = std::min(pulls.size(), means.size());
  for (std::size_t i = 0; i < k; ++i) regret += static_cast<double>(pulls[i]) * means[i];
  return regret;
}

}  // namespace infarm
