#include <doctest.h>

#include <cmath>
#include <vector>

#include "infarm/errors.hpp"
#include "infarm/rewards.hpp"

using namespace infarm;

namespace {

double sample_mean(const RewardModel& m, double mu, int draws, std::uint64_t seed) {
  Rng rng(seed);
  double s = 0.0;
  for (int i = 0; i < draws; ++i) s += m.draw(mu, rng);
  return s / draws;
}

}  // namespace

TEST_CASE("Bernoulli edge means") {
  const auto b = RewardModel::bernoulli();
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(b.draw(0.0, rng) == 0.0);
    CHECK(b.draw(1.0, rng) == 1.0);
  }
  CHECK_THROWS_AS(b.draw(1.5, rng), InputError);
  CHECK_THROWS_AS(b.draw(-0.1, rng), InputError);
  CHECK(b.prob_positive(0.3) == 0.3);
  CHECK(b.conditional_positive_mean(0.3) == 1.0);
}

TEST_CASE("sample means follow the law of large numbers") {
  const int draws = 1000000;
  CHECK(std::abs(sample_mean(RewardModel::scaled_continuous(), 2.0, draws, 3) - 2.0) < 0.01);
  CHECK(std::abs(sample_mean(RewardModel::scaled_continuous(ScaleBase::uniform02), 2.0, draws, 4) - 2.0) < 0.01);
  CHECK(std::abs(sample_mean(RewardModel::scaled_continuous(ScaleBase::gamma, 4.0), 2.0, draws, 5) - 2.0) < 0.01);
  CHECK(std::abs(sample_mean(RewardModel::poisson(), 0.7, draws, 6) - 0.7) < 0.005);
  CHECK(std::abs(sample_mean(RewardModel::bernoulli(), 0.3, draws, 7) - 0.3) < 0.003);
  CHECK(std::abs(sample_mean(RewardModel::bounded_discrete(4), 1.2, draws, 8) - 1.2) < 0.01);
}

TEST_CASE("bounded discrete with a custom pmf") {
  // Mass split between 0 and 2 only.
  const auto m = RewardModel::bounded_discrete(3, [](double mu) {
    return std::vector<double>{1.0 - mu / 2.0, 0.0, mu / 2.0, 0.0};
  });
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = m.draw(1.0, rng);
    CHECK((x == 0.0 || x == 2.0));
  }
  CHECK(m.prob_positive(1.0) == doctest::Approx(0.5));
  CHECK(m.conditional_positive_mean(1.0) == doctest::Approx(2.0));

  const auto bad = RewardModel::bounded_discrete(3, [](double) { return std::vector<double>{1.0}; });
  CHECK_THROWS_AS(bad.draw(0.5, rng), ConfigError);
  CHECK_THROWS_AS(RewardModel::bounded_discrete(1), ConfigError);
}

TEST_CASE("Poisson conditional mean") {
  const auto p = RewardModel::poisson();
  CHECK(p.prob_positive(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(p.conditional_positive_mean(1.0) == doctest::Approx(1.0 / (1.0 - std::exp(-1.0))));
  CHECK(p.conditional_positive_mean(1e-12) == doctest::Approx(1.0));
}

TEST_CASE("dataset rewards do not draw from a mean") {
  Rng rng(1);
  CHECK_THROWS_AS(RewardModel::dataset_replay().draw(0.5, rng), InputError);
}

TEST_CASE("parse_reward_model round trips names") {
  for (const char* text : {"bernoulli", "poisson", "discrete:I=4", "continuous:base=exponential",
                           "continuous:base=uniform", "continuous:base=gamma,k=2.5", "dataset"}) {
    CHECK(parse_reward_model(text).name() == text);
  }
  CHECK(parse_reward_model("continuous").scale_base() == ScaleBase::exponential);
  CHECK_THROWS_AS(parse_reward_model("gaussian"), ConfigError);
  CHECK_THROWS_AS(parse_reward_model("continuous:base=cauchy"), ConfigError);
}
