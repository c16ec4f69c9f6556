#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "infarm/cli.hpp"
#include "infarm/errors.hpp"

using namespace infarm;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "infarm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("ad-hoc run emits one CSV row") {
  const auto r = run({"run", "--policy", "cbt:zeta=auto", "--prior", "uniform", "--reward", "bernoulli", "--n", "100",
                      "--reps", "100", "--format", "csv"});
  CHECK(r.code == cli::ok);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.rfind("policy,prior,n,R,mean_regret,se,wall_time_ms,base_seed", 0) == 0);
  CHECK(r.out.find("\"cbt:zeta=auto,b=loglog,c=loglog\",uniform,100,100,") != std::string::npos);
}

TEST_CASE("table rows and n subsets") {
  const auto r = run({"run", "--table", "1", "--rows", "cbt,empirical", "--n", "100,1000", "--reps", "20", "--seed",
                      "7", "--format", "csv"});
  CHECK(r.code == cli::ok);
  CHECK(count_lines(r.out) == 5);

  const auto console = run({"run", "--table", "2", "--rows", "cbt", "--n", "100", "--reps", "20"});
  CHECK(console.code == cli::ok);
  CHECK(console.out.find("Lower bound") != std::string::npos);
  CHECK(console.out.find("23.0") != std::string::npos);

  CHECK(run({"run", "--table", "1", "--rows", "poker", "--reps", "2"}).code == cli::usage_error);
  CHECK(run({"run", "--table", "5"}).code == cli::usage_error);
}

TEST_CASE("table registry") {
  CHECK(cli::table_definition(1).rows.size() == 10);
  CHECK(cli::table_definition(3).prior == "one-minus-cos");
  CHECK(cli::table_definition(4).needs_dataset);
  CHECK(cli::table_definition(4).n_values == std::vector<std::uint64_t>{130, 1300});
  CHECK_THROWS_AS(cli::table_definition(0), ConfigError);
}

TEST_CASE("table 4 without a dataset points at the download") {
  const auto r = run({"run", "--table", "4"});
  CHECK(r.code == cli::usage_error);
  CHECK(r.err.find("sourceforge.net/projects/bandit") != std::string::npos);
  const auto missing = run({"run", "--table", "4", "--dataset", "/nonexistent/latency.txt"});
  CHECK(missing.code == cli::usage_error);
  CHECK(missing.err.find("sourceforge.net/projects/bandit") != std::string::npos);
}

TEST_CASE("table 4 on a small dataset") {
  const auto path = std::filesystem::temp_directory_path() / "infarm_cli_dataset.txt";
  {
    std::ofstream f(path);
    for (int row = 0; row < 200; ++row) {
      for (int arm = 0; arm < 8; ++arm) f << (arm + 1) * 10 + (row * 7 + arm) % 5 << (arm < 7 ? ' ' : '\n');
    }
  }
  const auto r = run({"run", "--table", "4", "--dataset", path.string(), "--n", "130", "--reps", "10", "--format",
                      "csv", "--orientation", "columns"});
  CHECK(r.code == cli::ok);
  CHECK(count_lines(r.out) == 1 + 4 * 2);
  CHECK(r.out.find("per-trial-relative") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("CSV output is byte-identical across reruns") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "infarm_cli_a.csv", b = dir / "infarm_cli_b.csv";
  for (const auto& p : {a, b}) {
    const auto r = run({"run", "--table", "1", "--rows", "cbt,two-target-3,ucbf", "--n", "1000", "--reps", "50",
                        "--seed", "7", "--jobs", "3", "--out", p.string()});
    REQUIRE(r.code == cli::ok);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("config file with command-line precedence") {
  const auto cfg = std::filesystem::temp_directory_path() / "infarm_cli.conf";
  {
    std::ofstream f(cfg);
    f << "# experiment\n[run]\npolicy=cbt:zeta=0.1\nn=200\nreps=30\nseed=5\nformat=csv\n";
  }
  const auto from_file = run({"--config", cfg.string(), "run"});
  CHECK(from_file.code == cli::ok);
  CHECK(from_file.out.find(",200,30,") != std::string::npos);
  const auto overridden = run({"--config", cfg.string(), "run", "--reps", "40"});
  CHECK(overridden.out.find(",200,40,") != std::string::npos);
  std::filesystem::remove(cfg);
}

TEST_CASE("constants") {
  const auto r = run({"constants"});
  CHECK(r.code == cli::ok);
  for (const char* s : {"447", "1.10", "1.17", "1.24", "1.53", "2299", "1249", "7022", "106.7", "39.5"}) {
    CAPTURE(s);
    CHECK(r.out.find(s) != std::string::npos);
  }
  const auto csv = run({"constants", "--beta", "1", "--alpha", "1", "--n", "100000", "--format", "csv"});
  CHECK(csv.out.find(",447.2136") != std::string::npos);
  const auto t3 = run({"constants", "--beta", "3", "--alpha", "pi^2/2", "--n", "10000"});
  CHECK(t3.out.find("1249") != std::string::npos);
  CHECK(run({"constants", "--alpha", "-1", "--beta", "1"}).code == cli::usage_error);
}

TEST_CASE("verify suites") {
  for (const char* suite : {"lemma1", "theorem-a", "priors"}) {
    CAPTURE(suite);
    const auto r = run({"verify", suite});
    CHECK(r.code == cli::ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  const auto bad = run({"verify", "unknown"});
  CHECK(bad.code == cli::usage_error);
  CHECK(cli::verify_suite("lemma1").size() == 6);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::usage_error);
  CHECK(run({"run"}).code == cli::usage_error);
  CHECK(run({"run", "--policy", "nope", "--n", "10"}).code == cli::usage_error);
  CHECK(run({"run", "--policy", "cbt", "--n", "10", "--format", "xml"}).code == cli::usage_error);
  CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("the executable reports exit codes") {
  const std::string exe = INFARM_CLI_PATH;
  auto status = [](const std::string& cmd) { return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str())); };
  CHECK(status(exe + " constants") == 0);
  CHECK(status(exe + " verify unknown") == 2);
  CHECK(status(exe + " run --table 4") == 2);
}
