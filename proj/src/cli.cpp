#include "infarm/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "infarm/dataset.hpp"
#include "infarm/engine.hpp"
#include "infarm/errors.hpp"
#include "infarm/oracle.hpp"
#include "infarm/policies.hpp"
#include "infarm/priors.hpp"
#include "spec_parse.hpp"

namespace infarm::cli {
namespace {

constexpr const char* kDatasetHint =
    "the URL latency dataset can be downloaded from sourceforge.net/projects/bandit; pass it with --dataset";

std::vector<TableRow> bernoulli_rows(bool berry) {
  std::vector<TableRow> rows = {
      {"cbt", "CBT", "zeta=C*n^(-1/(beta+1))", "cbt:zeta=asymptotic,b=loglog,c=loglog"},
      {"empirical", "CBT", "empirical", "empirical-cbt:b=loglog,c=loglog"},
  };
  if (berry) {
    rows.push_back({"1-failure", "Berry et al.", "1-failure", "f-failure:f=1"});
    rows.push_back({"s-run", "Berry et al.", "sqrt(n)-run", "s-run:s=auto"});
    rows.push_back({"nonrecall", "Berry et al.", "sqrt(n)-run (non-recall)", "nonrecall-s-run:s=auto"});
    rows.push_back({"m-learning", "Berry et al.", "log(n)sqrt(n)-learning", "m-learning:m=auto"});
  }
  for (int f : {3, 6, 9}) {
    rows.push_back({"two-target-" + std::to_string(f), "Two-target", "f=" + std::to_string(f),
                    "two-target:f=" + std::to_string(f) + ",s1=auto,sf=auto"});
  }
  rows.push_back({"ucbf", "UCB-F", "K=auto", "ucbf:K=auto"});
  if (!berry) rows.push_back({"nonrecall", "n^(1/(beta+1))-run", "non-recall", "nonrecall-s-run:s=auto"});
  return rows;
}

const std::vector<TableDefinition>& registry() {
  static const std::vector<TableDefinition> tables = [] {
    const std::vector<std::uint64_t> ns = {100, 1000, 10000, 100000};
    std::vector<TableDefinition> t;
    t.push_back({1, "uniform", "bernoulli", ns, bernoulli_rows(true), false});
    t.push_back({2, "sine", "bernoulli", ns, bernoulli_rows(false), false});
    t.push_back({3, "one-minus-cos", "bernoulli", ns, bernoulli_rows(false), false});
    t.push_back({4,
                 "",
                 "dataset",
                 {130, 1300},
                 {{"empirical", "emp. CBT", "", "empirical-cbt:b=loglog,c=loglog"},
                  {"eps-greedy", "eps-greedy", "0.05", "eps-greedy:eps=0.05,pool=auto"},
                  {"eps-first", "eps-first", "0.15", "eps-first:eps=0.15,pool=auto"},
                  {"eps-decreasing", "eps-decreasing", "1.0", "eps-decreasing:eps=1,pool=auto"}},
                 true});
    return t;
  }();
  return tables;
}

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

// Printed-table style: whole numbers from 1000 up, one decimal below.
std::string cell_number(double x) { return std::abs(x) >= 1000.0 ? fixed(x, 0) : fixed(x, 1); }

std::string cell_se(double x) { return x >= 10.0 ? fixed(x, 0) : fixed(x, 1); }

struct CsvRow {
  std::string policy, prior, reward, metric;
  std::uint64_t n = 0, reps = 0, seed = 0;
  double mean = 0.0, se = 0.0, wall_ms = 0.0;
};

const char* kCsvHeader = "policy,prior,n,R,mean_regret,se,wall_time_ms,base_seed,reward,metric";

std::string csv_line(const CsvRow& r) {
  std::ostringstream s;
  s << '"' << r.policy << '"' << ',' << r.prior << ',' << r.n << ',' << r.reps << ',' << fixed(r.mean, 6) << ','
    << fixed(r.se, 6) << ',' << fixed(r.wall_ms, 0) << ',' << r.seed << ',' << '"' << r.reward << '"' << ','
    << r.metric;
  return s.str();
}

double parse_alpha(const std::string& text) {
  if (text == "pi^2/2" || text == "pi2/2") return std::numbers::pi * std::numbers::pi / 2.0;
  return detail::to_number(text, "--alpha");
}

// --- run ----------------------------------------------------------------------

struct RunOptions {
  std::optional<int> table;
  std::vector<std::string> rows;
  std::vector<std::string> policies;
  std::string prior = "uniform";
  std::string reward = "bernoulli";
  std::vector<std::uint64_t> n_values;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string dataset;
  std::string orientation = "auto";
  std::string out;
  std::string format = "console";
  bool timing = false;
};

struct Cell {
  std::string row_label, row_variant;
  std::uint64_t n;
  MonteCarloSummary summary;
};

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  struct Job {
    std::string label, variant, policy;
  };
  std::vector<Job> jobs;
  std::vector<std::uint64_t> n_values = opt.n_values;
  std::string prior_text = opt.prior, reward_text = opt.reward;
  bool use_dataset = !opt.dataset.empty();
  const TableDefinition* def = nullptr;

  if (opt.table) {
    def = &table_definition(*opt.table);
    if (!opt.policies.empty()) throw ConfigError("--table and --policy are mutually exclusive");
    for (const auto& row : def->rows) {
      if (opt.rows.empty() || std::find(opt.rows.begin(), opt.rows.end(), row.key) != opt.rows.end()) {
        jobs.push_back({row.label, row.variant, row.policy});
      }
    }
    for (const auto& key : opt.rows) {
      if (std::none_of(def->rows.begin(), def->rows.end(), [&](const TableRow& r) { return r.key == key; })) {
        throw ConfigError("table " + std::to_string(def->id) + " has no row '" + key + "'");
      }
    }
    if (n_values.empty()) n_values = def->n_values;
    if (def->needs_dataset) {
      if (opt.dataset.empty()) throw ConfigError(std::string("table 4 needs a dataset file; ") + kDatasetHint);
      use_dataset = true;
    } else {
      prior_text = def->prior;
      reward_text = def->reward;
      use_dataset = false;
    }
  } else {
    if (opt.policies.empty()) throw ConfigError("give --table or at least one --policy");
    for (const auto& p : opt.policies) jobs.push_back({p, "", p});
    if (n_values.empty()) throw ConfigError("give at least one --n");
  }

  ExperimentConfig base;
  std::string prior_name;
  if (use_dataset) {
    if (!std::filesystem::exists(opt.dataset)) {
      throw ConfigError("dataset file '" + opt.dataset + "' not found; " + kDatasetHint);
    }
    auto pool = std::make_shared<const DatasetPool>(load_dataset(opt.dataset, parse_orientation(opt.orientation)));
    base.source = DatasetSource{pool};
    prior_name = "dataset";
    reward_text = "dataset";
  } else {
    base.source = SyntheticSource{parse_prior(prior_text), parse_reward_model(reward_text)};
    prior_name = std::get<SyntheticSource>(base.source).prior.name();
    reward_text = std::get<SyntheticSource>(base.source).rewards.name();
  }
  base.reps = opt.reps;
  base.base_seed = opt.seed;
  base.jobs = opt.jobs;
  if (opt.reps == 0) throw ConfigError("--reps must be at least 1");

  std::vector<CsvRow> csv;
  std::vector<Cell> cells;
  for (const auto& job : jobs) {
    const PolicySpec spec = parse_policy_spec(job.policy);
    for (auto n : n_values) {
      ExperimentConfig config = base;
      config.policy = spec;
      config.n = n;
      const auto start = std::chrono::steady_clock::now();
      auto summary = monte_carlo(config);
      const double wall =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      CsvRow row{to_string(spec), prior_name, reward_text, "total", n, opt.reps, opt.seed,
                 summary.mean_regret, summary.se, opt.timing ? wall : 0.0};
      if (use_dataset) {
        const double nn = static_cast<double>(n);
        row.metric = "per-trial";
        row.mean = summary.mean_regret / nn;
        row.se = summary.se / nn;
        csv.push_back(row);
        row.metric = "per-trial-relative";
        row.mean = (summary.mean_regret - summary.baseline) / nn;
        csv.push_back(row);
      } else {
        csv.push_back(row);
      }
      cells.push_back({job.label, job.variant, n, summary});
    }
  }

  auto write_csv = [&](std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const auto& r : csv) os << csv_line(r) << '\n';
  };
  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + opt.out);
    write_csv(file);
  }
  if (opt.format == "csv") {
    write_csv(out);
    return ok;
  }

  // Console rendering: one line per algorithm, one column per n.
  const double scale_dataset = use_dataset ? 1.0 : 0.0;
  out << (def ? "Table " + std::to_string(def->id) + ": " : std::string{}) << "prior=" << prior_name
      << " reward=" << reward_text << " reps=" << opt.reps << " seed=" << opt.seed
      << (use_dataset ? " (average regret R_n/n)" : "") << '\n';
  std::ostringstream header;
  header << std::left << std::setw(46) << "Algorithm";
  for (auto n : n_values) header << std::right << std::setw(16) << ("n=" + std::to_string(n));
  out << header.str() << '\n' << std::string(header.str().size(), '-') << '\n';
  std::size_t idx = 0;
  for (const auto& job : jobs) {
    std::ostringstream line;
    line << std::left << std::setw(46) << (job.label + (job.variant.empty() ? "" : "  " + job.variant));
    for (std::size_t j = 0; j < n_values.size(); ++j, ++idx) {
      const auto& c = cells[idx];
      const double div = scale_dataset > 0.0 ? static_cast<double>(c.n) : 1.0;
      line << std::right << std::setw(16) << (cell_number(c.summary.mean_regret / div) + "+-" + cell_se(c.summary.se / div));
    }
    out << line.str() << '\n';
  }
  if (def && !def->needs_dataset) {
    const auto prior = parse_prior(def->prior);
    std::ostringstream line;
    line << std::left << std::setw(46) << "Lower bound  C*n^(beta/(beta+1))";
    for (auto n : n_values) {
      line << std::right << std::setw(16) << cell_number(regret_lower_bound(prior.alpha(), prior.beta(), 1.0, n));
    }
    out << line.str() << '\n';
  }
  (void)err;
  return ok;
}

// --- constants ----------------------------------------------------------------

struct ConstantsOptions {
  std::vector<double> betas;
  std::vector<std::string> alphas;
  std::string prior;
  double lambda = 1.0;
  std::vector<std::uint64_t> n_values = {100, 1000, 10000, 100000};
  std::string format = "console";
};

int cmd_constants(const ConstantsOptions& opt, std::ostream& out) {
  struct Entry {
    double alpha, beta;
  };
  std::vector<Entry> entries;
  if (!opt.prior.empty()) {
    const auto prior = parse_prior(opt.prior);
    entries.push_back({prior.alpha(), prior.beta()});
  }
  std::vector<double> betas = opt.betas;
  if (betas.empty() && entries.empty()) {
    for (const auto& prior : {PriorModel::uniform(), PriorModel::sine(), PriorModel::one_minus_cos()}) {
      entries.push_back({prior.alpha(), prior.beta()});
    }
    if (opt.alphas.empty()) entries.push_back({1.0, 10.0});
  }
  if (!opt.alphas.empty() && opt.alphas.size() != 1 && opt.alphas.size() != betas.size()) {
    throw ConfigError("--alpha takes one value or one per --beta");
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double alpha = opt.alphas.empty() ? 1.0 : parse_alpha(opt.alphas[opt.alphas.size() == 1 ? 0 : i]);
    if (!(alpha > 0.0) || !(betas[i] > 0.0)) throw ConfigError("alpha and beta must be positive");
    entries.push_back({alpha, betas[i]});
  }
  if (!(opt.lambda > 0.0)) throw ConfigError("lambda must be positive");

  const bool csv = opt.format == "csv";
  if (csv) {
    out << "alpha,beta,lambda,C,C0,I_beta,n,zeta_n,lower_bound\n";
  } else {
    out << std::left << std::setw(10) << "beta" << std::setw(12) << "alpha" << std::setw(10) << "lambda"
        << std::setw(10) << "C" << std::setw(10) << "C0" << std::setw(10) << "I_beta";
    for (auto n : opt.n_values) out << std::setw(22) << ("n=" + std::to_string(n) + " zeta/bound");
    out << '\n';
  }
  for (const auto& e : entries) {
    const double c = asymptotic_constant(e.alpha, e.beta, opt.lambda);
    const double c0 = asymptotic_constant(e.alpha, e.beta, 1.0);
    const double ib = i_beta(e.beta);
    if (csv) {
      for (auto n : opt.n_values) {
        out << fixed(e.alpha, 6) << ',' << fixed(e.beta, 6) << ',' << fixed(opt.lambda, 6) << ',' << fixed(c, 6)
            << ',' << fixed(c0, 6) << ',' << fixed(ib, 6) << ',' << n << ','
            << fixed(asymptotic_target(e.alpha, e.beta, opt.lambda, n), 8) << ','
            << fixed(regret_lower_bound(e.alpha, e.beta, opt.lambda, n), 4) << '\n';
      }
    } else {
      out << std::left << std::setw(10) << fixed(e.beta, 3) << std::setw(12) << fixed(e.alpha, 4) << std::setw(10)
          << fixed(opt.lambda, 3) << std::setw(10) << fixed(c, 4) << std::setw(10) << fixed(c0, 4) << std::setw(10)
          << fixed(ib, 2);
      for (auto n : opt.n_values) {
        out << std::setw(22)
            << (fixed(asymptotic_target(e.alpha, e.beta, opt.lambda, n), 5) + " / " +
                cell_number(regret_lower_bound(e.alpha, e.beta, opt.lambda, n)));
      }
      out << '\n';
    }
  }
  return ok;
}

// --- verify -------------------------------------------------------------------

std::vector<VerifyLine> verify_lemma1() {
  std::vector<VerifyLine> lines;
  for (const auto& prior : {PriorModel::uniform(), PriorModel::sine(), PriorModel::one_minus_cos()}) {
    for (std::uint64_t n : {100ULL, 10000ULL}) {
      const double zeta = optimal_target(prior, 1.0, n);
      const double best = r_n_of(prior, 1.0, n, zeta);
      const double top = prior.support_max();
      double grid_min = best;
      double arg = zeta;
      constexpr int kGrid = 10000;
      for (int i = 1; i <= kGrid; ++i) {
        const double z = top * i / kGrid;
        const double r = r_n_of(prior, 1.0, n, z);
        if (r < grid_min) {
          grid_min = r;
          arg = z;
        }
      }
      const double nz = static_cast<double>(n) * zeta;
      const bool pass = grid_min >= best - 1e-9 && std::abs(best - nz) <= 1e-9 * nz;
      lines.push_back({"lemma1 " + prior.name() + " n=" + std::to_string(n), pass,
                       "r_n(zeta_n)=" + fixed(best, 10) + " n*zeta_n=" + fixed(nz, 10) +
                           " grid min=" + fixed(grid_min, 10) + " at " + fixed(arg, 6)});
    }
  }
  return lines;
}

std::vector<VerifyLine> verify_theorem_a() {
  std::vector<VerifyLine> lines;
  for (const auto& prior : {PriorModel::uniform(), PriorModel::sine(), PriorModel::one_minus_cos()}) {
    const std::uint64_t n = 1000000;
    const auto series = theorem_a_series(prior.alpha(), prior.beta(), 1.0, n, 100000000);
    const double closed = asymptotic_constant(prior.alpha(), prior.beta(), 1.0) * i_beta(prior.beta()) *
                          std::pow(static_cast<double>(n), prior.beta() / (prior.beta() + 1.0));
    const double ratio = series.value / closed;
    lines.push_back({"theorem-a beta=" + fixed(prior.beta(), 0) + " n=1e6", std::abs(ratio - 1.0) <= 0.01,
                     "series=" + fixed(series.value, 4) + " C*I*n^(b/(b+1))=" + fixed(closed, 4) +
                         " ratio=" + fixed(ratio, 6)});
  }
  return lines;
}

std::vector<VerifyLine> verify_tails(int jobs) {
  std::vector<VerifyLine> lines;
  const auto model = RewardModel::bernoulli();
  const std::uint64_t reps = 10000;
  auto estimate = [&](std::uint64_t n, double factor) {
    const double zeta = std::sqrt(2.0 / static_cast<double>(n));
    const double b = loglog_scale(n);
    return stopping_tail_estimate(model, factor * zeta, zeta, b, b, n, reps, 20240601 + n, jobs);
  };
  const auto small = estimate(1000, 0.5);
  const auto large = estimate(100000, 0.5);
  const double slack = 3.0 * std::hypot(small.se, large.se);
  lines.push_back({"tails good arm (mu=0.5 zeta_n) n=1e5 vs n=1e3", large.probability < small.probability + slack,
                   "P(n=1e3)=" + fixed(small.probability, 4) + "+-" + fixed(small.se, 4) +
                       " P(n=1e5)=" + fixed(large.probability, 4) + "+-" + fixed(large.se, 4)});
  const auto bad = estimate(10000, 10.0);
  lines.push_back({"tails bad arm (mu=10 zeta_n) n=1e4", bad.probability > 0.99,
                   "P=" + fixed(bad.probability, 4) + "+-" + fixed(bad.se, 4)});
  return lines;
}

std::vector<VerifyLine> verify_priors() {
  std::vector<VerifyLine> lines;
  for (const auto& prior : {PriorModel::uniform(), PriorModel::sine(), PriorModel::one_minus_cos(),
                            PriorModel::power_law(2.0, 2.0), PriorModel::power_law(0.5, 0.5)}) {
    const double top = prior.support_max();
    double worst_p = 0.0, worst_v = 0.0, worst_fd = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double z = top * i / 100.0;
      worst_p = std::max(worst_p, std::abs(prior.p(z) - p_numeric(prior, z)));
      worst_v = std::max(worst_v, std::abs(prior.v(z) - v_numeric(prior, z)));
      if (i < 100) {
        const double h = 1e-5 * top;
        worst_fd = std::max(worst_fd, std::abs((prior.v(z + h) - prior.v(z - h)) / (2.0 * h) - prior.p(z)));
      }
    }
    const double mass = p_numeric(prior, top);
    const bool pass = worst_p <= 1e-9 && worst_v <= 1e-9 && worst_fd <= 1e-6 && std::abs(mass - 1.0) <= 1e-6;
    std::ostringstream detail;
    detail << std::scientific << std::setprecision(2) << "mass-1=" << mass - 1.0 << " |p-num|=" << worst_p
           << " |v-num|=" << worst_v << " |v'-p|=" << worst_fd;
    lines.push_back({"priors " + prior.name(), pass, detail.str()});
  }
  return lines;
}

}  // namespace

const TableDefinition& table_definition(int id) {
  for (const auto& t : registry()) {
    if (t.id == id) return t;
  }
  throw ConfigError("unknown table " + std::to_string(id) + " (expected 1-4)");
}

std::vector<VerifyLine> verify_suite(const std::string& suite, int jobs) {
  if (suite == "lemma1") return verify_lemma1();
  if (suite == "theorem-a") return verify_theorem_a();
  if (suite == "tails") return verify_tails(jobs);
  if (suite == "priors") return verify_priors();
  throw ConfigError("unknown suite '" + suite + "' (expected lemma1, theorem-a, tails or priors)");
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infinite-arms bandit simulator: confidence-bound-target policies and competitors"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo regret for a table or ad-hoc policies");
  run_cmd->add_option("--table", run.table, "Reproduce table 1, 2, 3 or 4")->check(CLI::Range(1, 4));
  run_cmd->add_option("--rows", run.rows, "Subset of table rows by key")->delimiter(',');
  run_cmd->add_option("--policy", run.policies, "Policy specification, e.g. cbt:zeta=auto (repeatable)");
  run_cmd->add_option("--prior", run.prior, "uniform | sine | one-minus-cos | power:alpha=..,beta=..");
  run_cmd->add_option("--reward", run.reward, "bernoulli | poisson | discrete:I=.. | continuous[:base=..]");
  run_cmd->add_option("--n", run.n_values, "Horizon(s)")->delimiter(',');
  run_cmd->add_option("--reps", run.reps, "Replications per cell");
  run_cmd->add_option("--seed", run.seed, "Base seed; replication r uses seed+r");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (0: OpenMP default)");
  run_cmd->add_option("--dataset", run.dataset, "Latency dataset for table 4");
  run_cmd->add_option("--orientation", run.orientation, "Dataset layout: auto | columns | rows");
  run_cmd->add_option("--out", run.out, "CSV output path");
  run_cmd->add_option("--format", run.format, "csv | console")->check(CLI::IsMember({"csv", "console"}));
  run_cmd->add_flag("--timing", run.timing, "Record wall time in the CSV (otherwise 0 for reproducible output)");

  ConstantsOptions constants;
  auto* const_cmd = app.add_subcommand("constants", "Print C, C0, I_beta, zeta_n and regret lower bounds");
  const_cmd->add_option("--beta", constants.betas, "beta values")->delimiter(',');
  const_cmd->add_option("--alpha", constants.alphas, "alpha (one, or one per beta; 'pi^2/2' accepted)")
      ->delimiter(',');
  const_cmd->add_option("--prior", constants.prior, "Take alpha and beta from a named prior");
  const_cmd->add_option("--lambda", constants.lambda, "Experimentation cost lambda");
  const_cmd->add_option("--n", constants.n_values, "Horizons")->delimiter(',');
  const_cmd->add_option("--format", constants.format, "csv | console")->check(CLI::IsMember({"csv", "console"}));

  std::string suite;
  int verify_jobs = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run an oracle suite: lemma1, theorem-a, tails, priors");
  verify_cmd->add_option("suite", suite, "Suite name")->required();
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads (0: OpenMP default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (*run_cmd) return cmd_run(run, out, err);
    if (*const_cmd) return cmd_constants(constants, out);
    if (*verify_cmd) {
      const auto lines = verify_suite(suite, verify_jobs);
      bool all = true;
      for (const auto& l : lines) {
        out << (l.pass ? "PASS " : "FAIL ") << l.name << "  " << l.detail << '\n';
        all = all && l.pass;
      }
      return all ? ok : verification_failed;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

}  // namespace infarm::cli
