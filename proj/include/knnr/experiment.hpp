#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "knnr/driver.hpp"

namespace knnr {

enum class RunMode { Full, Baseline, QuickOnly, FalsifyOnly };

const char* to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(const std::string& s);

struct ExperimentConfig {
  std::string train_path;
  std::string test_path;
  int n = 1;
  int folds = 10;
  int k_stride = 0;            // 0 = auto
  std::vector<int> k_list;     // explicit candidate list wins over stride
  std::uint64_t seed = 0;
  double time_limit_secs = 1800.0;
  RunMode mode = RunMode::Full;
  std::optional<int> poison_max;
  std::uint64_t poison_seed = 0;
  bool header = false;
  int workers = 1;
  std::string out_path;  // empty = don't write
};

/// Loads the data, optionally injects poison, decides robustness per test
/// input and aggregates. One input's failure is recorded and the batch
/// continues. Rows are ordered by input index regardless of scheduling;
/// single-worker runs are fully deterministic. Writes the JSON report to
/// cfg.out_path when set and returns it.
nlohmann::ordered_json run_experiment(const ExperimentConfig& cfg);

}  // namespace knnr
