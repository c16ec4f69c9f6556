#include "infarm/engine.hpp"

#include <numeric>

#include "infarm/errors.hpp"
#include "infarm/parallel.hpp"

namespace infarm {
namespace {

class SyntheticArms {
 public:
  explicit SyntheticArms(const SyntheticSource& src) : src_(src) {}

  bool can_open() const noexcept { return true; }
  void open(Rng& rng) { means_.push_back(src_.prior.sample(rng)); }
  double pull(std::size_t k, Rng& rng) { return src_.rewards.draw(means_[k - 1], rng); }
  std::vector<double> take_means() { return std::move(means_); }

 private:
  const SyntheticSource& src_;
  std::vector<double> means_;
};

class DatasetArms {
 public:
  explicit DatasetArms(const DatasetPool& pool) : pool_(pool), unopened_(pool.arm_count()) {
    std::iota(unopened_.begin(), unopened_.end(), std::size_t{0});
  }

  bool can_open() const noexcept { return !unopened_.empty(); }

  void open(Rng& rng) {
    // Partial Fisher–Yates: a uniformly random arm among those not yet opened.
    const auto j = uniform_index(rng, unopened_.size());
    std::swap(unopened_[j], unopened_.back());
    const std::size_t arm = unopened_.back();
    unopened_.pop_back();
    streams_.push_back(replay_arm(pool_, arm, rng));
    means_.push_back(pool_.arm_means()[arm]);
  }

  double pull(std::size_t k, Rng&) { return streams_[k - 1].next(); }
  std::vector<double> take_means() { return std::move(means_); }

 private:
  const DatasetPool& pool_;
  std::vector<std::size_t> unopened_;
  std::vector<ReplayStream> streams_;
  std::vector<double> means_;
};

template <class Arms>
RunRecord play_game(Policy& policy, Arms arms, std::uint64_t n, Rng& rng) {
  GameState game(n);
  while (game.plays() < n) {
    const Action action = policy.decide(game, rng);
    std::size_t k = action.arm();
    if (action.is_new_arm()) {
      if (arms.can_open()) {
        k = game.open_arm();
        arms.open(rng);
      } else {
        // Pool exhausted: recall the best sample mean.
        const auto best = EpsilonPolicy::best_arm(game);
        k = best ? *best : 1;
      }
    } else if (k == 0 || k > game.arm_count()) {
      throw ContractViolation("policy chose unopened arm " + std::to_string(k) + " with " +
                              std::to_string(game.arm_count()) + " arms opened");
    }
    const double reward = arms.pull(k, rng);
    game.record(k, reward);
    policy.observe(game, k, reward);
  }

  RunRecord record;
  record.arms_opened = game.arm_count();
  record.pulls.reserve(game.arm_count());
  for (const auto& a : game.arms()) record.pulls.push_back(a.t);
  record.true_means = arms.take_means();
  record.realized_regret = realized_regret(record.pulls, record.true_means);
  return record;
}

MonteCarloSummary summarize(const ExperimentConfig& config, std::vector<RunRecord> records) {
  std::vector<double> regrets(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) regrets[r] = records[r].realized_regret;
  const auto stats = mean_and_se(regrets);
  MonteCarloSummary out;
  out.mean_regret = stats.mean;
  out.se = stats.se;
  out.reps = records.size();
  if (const auto* ds = std::get_if<DatasetSource>(&config.source)) {
    out.baseline = static_cast<double>(config.n) * ds->pool->best_mean();
  }
  if (config.keep_records) out.records = std::move(records);
  return out;
}

}  // namespace

PolicyContext context_for(const ExperimentConfig& config) {
  if (config.n == 0) throw ConfigError("horizon n must be at least 1");
  PolicyContext ctx;
  ctx.n = config.n;
  if (const auto* syn = std::get_if<SyntheticSource>(&config.source)) {
    if (syn->rewards.kind() == RewardModel::Kind::dataset_replay) {
      throw ConfigError("dataset rewards need a dataset source");
    }
    ctx.prior = syn->prior;
    ctx.lambda = lambda_of(syn->prior, syn->rewards);
  } else {
    const auto& ds = std::get<DatasetSource>(config.source);
    if (!ds.pool) throw ConfigError("dataset source has no pool");
    if (config.n > ds.pool->shortest_trace()) {
      throw ConfigError("horizon " + std::to_string(config.n) + " exceeds the shortest dataset trace (" +
                        std::to_string(ds.pool->shortest_trace()) + ")");
    }
    ctx.pool_size = ds.pool->arm_count();
  }
  return ctx;
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)), context_(context_for(config_)) {
  // Fail on unresolvable parameters before any replication starts.
  (void)make_policy(config_.policy, context_);
}

RunRecord Experiment::run(std::uint64_t seed) const {
  Rng rng(seed);
  auto policy = make_policy(config_.policy, context_);
  if (const auto* syn = std::get_if<SyntheticSource>(&config_.source)) {
    return play_game(*policy, SyntheticArms(*syn), config_.n, rng);
  }
  return play_game(*policy, DatasetArms(*std::get<DatasetSource>(config_.source).pool), config_.n, rng);
}

RunRecord simulate_run(const ExperimentConfig& config, std::uint64_t seed) { return Experiment(config).run(seed); }

RunRecord simulate_run(Policy& policy, const SyntheticSource& source, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("horizon n must be at least 1");
  Rng rng(seed);
  return play_game(policy, SyntheticArms(source), n, rng);
}

MonteCarloSummary monte_carlo(const ExperimentConfig& config) {
  if (config.reps == 0) throw ConfigError("replications must be at least 1");
  const Experiment experiment(config);
  auto records = replicate(config.reps, config.base_seed, config.jobs,
                           [&](std::uint64_t seed) { return experiment.run(seed); });
  return summarize(config, std::move(records));
}

MonteCarloSummary monte_carlo_serial(const ExperimentConfig& config) {
  if (config.reps == 0) throw ConfigError("replications must be at least 1");
  const Experiment experiment(config);
  auto records = replicate_serial(config.reps, config.base_seed,
                                  [&](std::uint64_t seed) { return experiment.run(seed); });
  return summarize(config, std::move(records));
}

}  // namespace infarm
