#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "infarm/rng.hpp"

namespace infarm {

/// How arms are laid out in a dataset file.
enum class Orientation {
  automatic,  // arms along the smaller dimension; ragged rows force one arm per row
  columns,    // one arm per column
  rows,       // one arm per row
};

Orientation parse_orientation(const std::string& text);

/// Per-arm reward traces, immutable after load.
class DatasetPool {
 public:
  explicit DatasetPool(std::vector<std::vector<double>> traces);

  std::size_t arm_count() const noexcept { return traces_.size(); }
  /// 0-based.
  std::span<const double> trace(std::size_t arm) const { return traces_.at(arm); }
  const std::vector<double>& arm_means() const noexcept { return means_; }
  double best_mean() const noexcept { return best_mean_; }
  std::size_t shortest_trace() const noexcept { return shortest_; }

 private:
  std::vector<std::vector<double>> traces_;
  std::vector<double> means_;
  double best_mean_ = 0.0;
  std::size_t shortest_ = 0;
};

/// Reads whitespace- or comma-separated numbers. Blank lines and lines starting
/// with '#' are skipped; empty fields, "NA" and "nan" are missing values.
/// Throws ParseError (with line number) on a bad token and ConfigError naming
/// the arm when a trace ends up empty.
DatasetPool load_dataset(const std::filesystem::path& path, Orientation orientation = Orientation::automatic);
DatasetPool parse_dataset(const std::string& text, Orientation orientation = Orientation::automatic);

/// An arm's trace replayed in a fresh uniform permutation, without replacement.
class ReplayStream {
 public:
  ReplayStream(std::span<const double> trace, Rng& rng);

  /// Throws ConfigError once the trace is exhausted.
  double next();
  std::size_t remaining() const noexcept { return order_.size() - position_; }

 private:
  std::span<const double> trace_;
  std::vector<std::size_t> order_;
  std::size_t position_ = 0;
};

ReplayStream replay_arm(const DatasetPool& pool, std::size_t arm, Rng& rng);

}  // namespace infarm
