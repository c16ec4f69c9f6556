#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "infarm/dataset.hpp"
#include "infarm/errors.hpp"

using namespace infarm;

TEST_CASE("toy file, columns are arms") {
  const auto pool = parse_dataset("1 5\n2 6\n3 7\n");
  REQUIRE(pool.arm_count() == 2);
  CHECK(std::vector<double>(pool.trace(0).begin(), pool.trace(0).end()) == std::vector<double>{1, 2, 3});
  CHECK(std::vector<double>(pool.trace(1).begin(), pool.trace(1).end()) == std::vector<double>{5, 6, 7});
  CHECK(pool.arm_means() == std::vector<double>{2.0, 6.0});
  CHECK(pool.best_mean() == 2.0);
  CHECK(pool.shortest_trace() == 3);
}

TEST_CASE("orientation, separators, comments and missing values") {
  const auto rows = parse_dataset("# latency\n1,2,3\n\n4,5,NA\n", Orientation::rows);
  REQUIRE(rows.arm_count() == 2);
  CHECK(rows.trace(1).size() == 2);
  CHECK(rows.shortest_trace() == 2);

  const auto cols = parse_dataset("1,2,3\n4,5,6\n", Orientation::columns);
  CHECK(cols.arm_count() == 3);
  CHECK(cols.arm_means()[2] == 4.5);

  // Automatic: arms along the smaller dimension.
  CHECK(parse_dataset("1 2 3 4\n5 6 7 8\n").arm_count() == 2);
  CHECK(parse_dataset("1 2\n3 4\n5 6\n7 8\n").arm_count() == 2);

  CHECK(parse_orientation("auto") == Orientation::automatic);
  CHECK(parse_orientation("columns") == Orientation::columns);
  CHECK(parse_orientation("rows") == Orientation::rows);
  CHECK_THROWS_AS(parse_orientation("diagonal"), ConfigError);
}

TEST_CASE("parse errors carry the line") {
  try {
    parse_dataset("1 2\n3 4\n5 abc\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_dataset("1 -2\n"), ParseError);
}

TEST_CASE("an empty arm is named") {
  try {
    parse_dataset("1 NA\n2 NA\n", Orientation::columns);
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("arm 2") != std::string::npos);
  }
}

TEST_CASE("load_dataset reads a file") {
  const auto path = std::filesystem::temp_directory_path() / "infarm_test_dataset.txt";
  {
    std::ofstream f(path);
    f << "1 5\n2 6\n3 7\n";
  }
  const auto pool = load_dataset(path);
  CHECK(pool.arm_count() == 2);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_dataset(path), ConfigError);
}

TEST_CASE("replay is a permutation without replacement") {
  const std::vector<double> trace{1, 2, 3};
  Rng rng(5);
  ReplayStream s(trace, rng);
  std::vector<double> got;
  for (int i = 0; i < 3; ++i) got.push_back(s.next());
  CHECK(s.remaining() == 0);
  std::sort(got.begin(), got.end());
  CHECK(got == trace);
  CHECK_THROWS_AS(s.next(), ConfigError);
}

TEST_CASE("different seeds give different permutations") {
  std::vector<double> trace(50);
  for (int i = 0; i < 50; ++i) trace[i] = i;
  const auto pool = DatasetPool({trace});
  auto order = [&](std::uint64_t seed) {
    Rng rng(seed);
    auto s = replay_arm(pool, 0, rng);
    std::vector<double> out;
    while (s.remaining() > 0) out.push_back(s.next());
    return out;
  };
  CHECK(order(1) == order(1));
  CHECK(order(1) != order(2));
}
