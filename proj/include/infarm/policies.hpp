#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infarm/core.hpp"
#include "infarm/priors.hpp"
#include "infarm/rng.hpp"

namespace infarm {

/// Confidence bound L = max(X̄/b, X̄ − c σ̂/√t). UndefinedStatistic for t = 0.
double cbt_bound(const ArmState& state, double b, double c);

/// b_n = c_n = log log n, clamped below at 1.
double loglog_scale(std::uint64_t n);

/// Stateful decision rule for one game.
///
/// The engine calls decide() before every trial and observe() right after the
/// reward has been recorded in the game state.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action decide(const GameState& game, Rng& rng) = 0;
  virtual void observe(const GameState& game, std::size_t arm, double reward) {
    (void)game;
    (void)arm;
    (void)reward;
  }
};

/// Non-recalling: plays the newest arm until its bound exceeds ζ.
class CbtPolicy final : public Policy {
 public:
  CbtPolicy(double zeta, double b, double c);
  Action decide(const GameState& game, Rng& rng) override;

  double zeta() const noexcept { return zeta_; }

 private:
  double zeta_, b_, c_;
};

/// Recalling: plays the arm with the smallest bound when it is at most S'_m/n,
/// else opens a new arm.
class EmpiricalCbtPolicy final : public Policy {
 public:
  EmpiricalCbtPolicy(double b, double c);
  Action decide(const GameState& game, Rng& rng) override;
  void observe(const GameState& game, std::size_t arm, double reward) override;

  /// ζ(m) = S'_m / n.
  static double threshold(const GameState& game);

 private:
  double b_, c_;
  std::vector<double> bound_;                         // cached L per arm (0-based)
  std::set<std::pair<double, std::size_t>> ordered_;  // (L, arm), lowest index wins ties
};

/// Base for the binary-reward strategies, where success is a reward of 0.
class BinaryRewardPolicy : public Policy {
 public:
  void observe(const GameState& game, std::size_t arm, double reward) override;
  std::optional<std::size_t> committed() const noexcept { return committed_; }

 protected:
  virtual void on_reward(const GameState& game, std::size_t arm, bool failure) = 0;
  /// Arm with the largest success proportion, lowest index among ties.
  static std::size_t best_success_proportion(const GameState& game);

  std::optional<std::size_t> committed_;
  bool leave_current_ = false;
};

/// Leaves the current arm at its f-th failure; never returns.
class FFailurePolicy final : public BinaryRewardPolicy {
 public:
  explicit FFailurePolicy(std::uint64_t f);
  Action decide(const GameState& game, Rng& rng) override;

 private:
  void on_reward(const GameState& game, std::size_t arm, bool failure) override;
  std::uint64_t f_;
};

/// Discards an arm with fewer than s_1 successes at its first failure or fewer
/// than s_f at its f-th failure; an arm meeting both targets is played to the end.
class TwoTargetPolicy final : public BinaryRewardPolicy {
 public:
  TwoTargetPolicy(std::uint64_t f, std::uint64_t s1, std::uint64_t sf);
  Action decide(const GameState& game, Rng& rng) override;

 private:
  void on_reward(const GameState& game, std::size_t arm, bool failure) override;
  std::uint64_t f_, s1_, sf_;
};

/// 1-failure over at most s arms; commits on s leading successes, otherwise to
/// the best success proportion once all s arms are spent.
class SRunPolicy final : public BinaryRewardPolicy {
 public:
  explicit SRunPolicy(std::uint64_t s);
  Action decide(const GameState& game, Rng& rng) override;

 private:
  void on_reward(const GameState& game, std::size_t arm, bool failure) override;
  std::uint64_t s_;
};

/// 1-failure until an arm's first s rewards are all successes, then commits.
class NonRecallSRunPolicy final : public BinaryRewardPolicy {
 public:
  explicit NonRecallSRunPolicy(std::uint64_t s);
  Action decide(const GameState& game, Rng& rng) override;

 private:
  void on_reward(const GameState& game, std::size_t arm, bool failure) override;
  std::uint64_t s_;
};

/// 1-failure for the first m trials, finishes the arm in play at trial m up to
/// its next failure, then commits to the best success proportion.
class MLearningPolicy final : public BinaryRewardPolicy {
 public:
  explicit MLearningPolicy(std::uint64_t m);
  Action decide(const GameState& game, Rng& rng) override;

 private:
  void on_reward(const GameState& game, std::size_t arm, bool failure) override;
  std::uint64_t m_;
};

/// Fixed pool of K arms, each played once first, then the arm minimizing
/// mean − sqrt(2 σ̂² E_m / t) − E_m / t with E_m = sqrt(log m).
class UcbfPolicy final : public Policy {
 public:
  explicit UcbfPolicy(std::size_t arms);
  Action decide(const GameState& game, Rng& rng) override;

  static double index(const ArmState& arm, std::uint64_t plays);

 private:
  std::size_t arms_;
};

enum class EpsilonVariant { greedy, first, decreasing };

/// ε-greedy, ε-first and ε-decreasing over a finite pool of arms. A random
/// pick of a not-yet-opened pool arm opens a new one.
class EpsilonPolicy final : public Policy {
 public:
  EpsilonPolicy(EpsilonVariant variant, double epsilon, std::size_t pool);
  Action decide(const GameState& game, Rng& rng) override;

  /// Smallest sample mean among played arms, lowest index among ties.
  static std::optional<std::size_t> best_arm(const GameState& game);

 private:
  EpsilonVariant variant_;
  double epsilon_;
  std::size_t pool_;
};

// ---------------------------------------------------------------------------
// Specifications, parsed from strings such as "cbt:zeta=auto,b=loglog".

/// A parameter that is either a number or resolved from the experiment context.
struct Param {
  enum class Mode { fixed, automatic, asymptotic, loglog };
  Mode mode = Mode::automatic;
  double value = 0.0;

  static Param fixed(double v) { return {Mode::fixed, v}; }
  friend bool operator==(const Param&, const Param&) = default;
};

struct CbtSpec {
  Param zeta{Param::Mode::automatic};
  Param b{Param::Mode::loglog};
  Param c{Param::Mode::loglog};
  friend bool operator==(const CbtSpec&, const CbtSpec&) = default;
};
struct EmpiricalCbtSpec {
  Param b{Param::Mode::loglog};
  Param c{Param::Mode::loglog};
  friend bool operator==(const EmpiricalCbtSpec&, const EmpiricalCbtSpec&) = default;
};
struct TwoTargetSpec {
  std::uint64_t f = 3;
  Param s1{};
  Param sf{};
  friend bool operator==(const TwoTargetSpec&, const TwoTargetSpec&) = default;
};
struct FFailureSpec {
  std::uint64_t f = 1;
  friend bool operator==(const FFailureSpec&, const FFailureSpec&) = default;
};
struct SRunSpec {
  Param s{};
  friend bool operator==(const SRunSpec&, const SRunSpec&) = default;
};
struct NonRecallSRunSpec {
  Param s{};
  friend bool operator==(const NonRecallSRunSpec&, const NonRecallSRunSpec&) = default;
};
struct MLearningSpec {
  Param m{};
  friend bool operator==(const MLearningSpec&, const MLearningSpec&) = default;
};
struct UcbfSpec {
  Param k{};
  friend bool operator==(const UcbfSpec&, const UcbfSpec&) = default;
};
struct EpsilonSpec {
  EpsilonVariant variant = EpsilonVariant::greedy;
  double epsilon = 0.05;
  Param pool{};
  friend bool operator==(const EpsilonSpec&, const EpsilonSpec&) = default;
};

using PolicySpec = std::variant<CbtSpec, EmpiricalCbtSpec, TwoTargetSpec, FFailureSpec, SRunSpec,
                                NonRecallSRunSpec, MLearningSpec, UcbfSpec, EpsilonSpec>;

/// Throws ConfigError on unknown names, unknown keys or invalid values.
PolicySpec parse_policy_spec(const std::string& text);
/// Canonical string; parse_policy_spec(to_string(s)) == s.
std::string to_string(const PolicySpec& spec);

/// What "auto" parameters resolve against.
struct PolicyContext {
  std::uint64_t n = 1;
  std::optional<PriorModel> prior;
  double lambda = 1.0;
  std::optional<std::size_t> pool_size;  // finite arm pool (dataset)
};

/// Pool size K = ⌊(β/α)^{1/(β+1)} (n/(β+1))^{β/(β+1)}⌋, at least 1.
std::size_t ucbf_arm_count(double alpha, double beta, std::uint64_t n);

/// Two-target thresholds for horizon n: with s = n^{1/(β+1)}/C_0,
/// s_1 = ⌊s^{(β+1)/(β+2)}⌋ and s_f = ⌊f s⌋ (⌊(n/2)^{1/3}⌋, ⌊f √(n/2)⌋ for the uniform prior).
std::pair<std::uint64_t, std::uint64_t> two_target_thresholds(double alpha, double beta, std::uint64_t f,
                                                              std::uint64_t n);

/// Run length ⌊n^{1/(β+1)}⌋, at least 1.
std::uint64_t run_length(double beta, std::uint64_t n);

/// ⌊log(n) √n⌋, at least 1.
std::uint64_t learning_length(std::uint64_t n);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& context);

/// Target ζ a CBT spec resolves to in `context`.
double resolve_zeta(const CbtSpec& spec, const PolicyContext& context);

}  // namespace infarm
