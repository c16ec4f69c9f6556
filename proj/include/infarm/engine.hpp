#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "infarm/core.hpp"
#include "infarm/dataset.hpp"
#include "infarm/policies.hpp"
#include "infarm/priors.hpp"
#include "infarm/rewards.hpp"

namespace infarm {

/// Arm means from a prior, rewards from a parametric family.
struct SyntheticSource {
  PriorModel prior;
  RewardModel rewards;
};

/// Arms taken without replacement from a replayed dataset.
struct DatasetSource {
  std::shared_ptr<const DatasetPool> pool;
};

struct ExperimentConfig {
  PolicySpec policy = CbtSpec{};
  std::variant<SyntheticSource, DatasetSource> source = SyntheticSource{PriorModel::uniform(), RewardModel::bernoulli()};
  std::uint64_t n = 1000;
  std::uint64_t reps = 10000;
  std::uint64_t base_seed = 1;
  int jobs = 0;  // 0: OpenMP default
  bool keep_records = false;
};

struct MonteCarloSummary {
  double mean_regret = 0.0;
  double se = 0.0;
  std::uint64_t reps = 0;
  /// n × best full-trace mean for dataset sources, 0 otherwise; the
  /// best-arm-relative regret is mean_regret − baseline.
  double baseline = 0.0;
  std::vector<RunRecord> records;
};

/// A configuration with its context resolved once (λ, targets, pool sizes).
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const noexcept { return config_; }
  const PolicyContext& context() const noexcept { return context_; }

  /// One game, deterministic in `seed`.
  RunRecord run(std::uint64_t seed) const;

 private:
  ExperimentConfig config_;
  PolicyContext context_;
};

PolicyContext context_for(const ExperimentConfig& config);

/// Exactly n plays; throws ContractViolation if the policy plays an unopened arm.
RunRecord simulate_run(const ExperimentConfig& config, std::uint64_t seed);
/// Same game loop with a caller-owned policy.
RunRecord simulate_run(Policy& policy, const SyntheticSource& source, std::uint64_t n, std::uint64_t seed);

/// Replication r uses seed base_seed + r; parallel over config.jobs threads.
MonteCarloSummary monte_carlo(const ExperimentConfig& config);
/// Single-threaded reference for monte_carlo; results are bit-identical.
MonteCarloSummary monte_carlo_serial(const ExperimentConfig& config);

}  // namespace infarm
