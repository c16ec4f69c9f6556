#include "infarm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "infarm/errors.hpp"

namespace infarm {
namespace {

using Row = std::vector<std::optional<double>>;

std::optional<double> parse_cell(const std::string& token, std::size_t line) {
  if (token.empty() || token == "NA" || token == "na" || token == "nan" || token == "NaN") return std::nullopt;
  double x = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw ParseError("non-numeric token '" + token + "'", line);
  }
  if (x < 0.0) throw ParseError("negative reward " + token, line);
  return x;
}

Row split_line(const std::string& line, std::size_t line_no) {
  Row row;
  if (line.find(',') != std::string::npos) {
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto b = cell.find_first_not_of(" \t\r");
      cell = b == std::string::npos ? std::string{} : cell.substr(b, cell.find_last_not_of(" \t\r") - b + 1);
      row.push_back(parse_cell(cell, line_no));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else {
    std::istringstream in(line);
    std::string token;
    while (in >> token) row.push_back(parse_cell(token, line_no));
  }
  return row;
}

}  // namespace

Orientation parse_orientation(const std::string& text) {
  if (text == "auto") return Orientation::automatic;
  if (text == "columns" || text == "cols") return Orientation::columns;
  if (text == "rows") return Orientation::rows;
  throw ConfigError("orientation must be auto, columns or rows; got '" + text + "'");
}

DatasetPool::DatasetPool(std::vector<std::vector<double>> traces) : traces_(std::move(traces)) {
  if (traces_.empty()) throw ConfigError("dataset has no arms");
  means_.reserve(traces_.size());
  shortest_ = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 0; k < traces_.size(); ++k) {
    const auto& tr = traces_[k];
    if (tr.empty()) throw ConfigError("arm " + std::to_string(k + 1) + " has no rewards");
    for (double x : tr) {
      if (!(x >= 0.0)) throw ConfigError("arm " + std::to_string(k + 1) + " has a negative reward");
    }
    means_.push_back(std::accumulate(tr.begin(), tr.end(), 0.0) / static_cast<double>(tr.size()));
    shortest_ = std::min(shortest_, tr.size());
  }
  best_mean_ = *std::min_element(means_.begin(), means_.end());
}

DatasetPool parse_dataset(const std::string& text, Orientation orientation) {
  std::vector<Row> rows;
  std::vector<std::size_t> row_lines;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(split_line(line, line_no));
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw ConfigError("dataset is empty");

  std::size_t width = 0;
  bool ragged = false;
  for (const auto& r : rows) {
    if (width != 0 && r.size() != width) ragged = true;
    width = std::max(width, r.size());
  }
  if (orientation == Orientation::automatic) {
    orientation = (ragged || rows.size() < width) ? Orientation::rows : Orientation::columns;
  }

  std::vector<std::vector<double>> traces;
  if (orientation == Orientation::rows) {
    for (const auto& r : rows) {
      auto& tr = traces.emplace_back();
      for (const auto& cell : r) {
        if (cell) tr.push_back(*cell);
      }
    }
  } else {
    traces.resize(width);
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (r[c]) traces[c].push_back(*r[c]);
      }
    }
  }
  return DatasetPool(std::move(traces));
}

DatasetPool load_dataset(const std::filesystem::path& path, Orientation orientation) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open dataset file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_dataset(buffer.str(), orientation);
}

ReplayStream::ReplayStream(std::span<const double> trace, Rng& rng) : trace_(trace), order_(trace.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  // Fisher–Yates
  for (std::size_t i = order_.size(); i > 1; --i) {
    std::swap(order_[i - 1], order_[uniform_index(rng, i)]);
  }
}

double ReplayStream::next() {
  if (position_ >= order_.size()) {
    throw ConfigError("replay stream exhausted after " + std::to_string(order_.size()) +
                      " rewards; the horizon exceeds the trace length");
  }
  return trace_[order_[position_++]];
}

ReplayStream replay_arm(const DatasetPool& pool, std::size_t arm, Rng& rng) {
  if (arm >= pool.arm_count()) throw InputError("dataset has no arm " + std::to_string(arm));
  return ReplayStream(pool.trace(arm), rng);
}

}  // namespace infarm
