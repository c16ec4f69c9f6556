#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace infarm::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

/// One row of a reproduction table.
struct TableRow {
  std::string key;      // selector for --rows
  std::string label;    // algorithm column
  std::string variant;  // parameter column
  std::string policy;   // policy specification string
};

struct TableDefinition {
  int id = 0;
  std::string prior;   // empty for the dataset table
  std::string reward;
  std::vector<std::uint64_t> n_values;
  std::vector<TableRow> rows;
  bool needs_dataset = false;
};

/// Tables 1–4; throws ConfigError for other ids.
const TableDefinition& table_definition(int id);

/// A request to reproduce (part of) a table.
struct TableSpec {
  int id = 1;
  std::vector<std::string> rows;       // empty: all
  std::vector<std::uint64_t> n_values; // empty: the table's own
  std::optional<std::uint64_t> reps;
  std::optional<std::string> out;
};

struct VerifyLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs one oracle suite: lemma1, theorem-a, tails or priors.
/// Throws ConfigError for an unknown suite name.
std::vector<VerifyLine> verify_suite(const std::string& suite, int jobs = 0);

/// Entry point of the `infarm` executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace infarm::cli
