// Copyright 2026 The qrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Experiment configs (JSON), result records and the file-writing runner used
// by the command-line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/reservoir.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

std::string_view library_version();

struct ExperimentConfig {
  ReservoirConfig reservoir;
  TaskSpec task;
  std::optional<SweepSpec> sweep;
  std::string output_dir = "qrc-out";
  bool emit_features = false;
  bool emit_predictions = false;
  unsigned workers = 0;  // 0 = QRC_WORKERS or hardware concurrency

  // Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Input scale of the time-series presets. The random sinusoid spans about
// [-5, 5], five times the regression grid, so s is reduced accordingly.
inline constexpr double kTimeSeriesScale = 0.25;

// Reservoir and task presets for a task kind. Time-series kinds switch the
// reservoir to the near-unitary regime (gamma = 1e-8) and s = kTimeSeriesScale.
ExperimentConfig preset_config(TaskKind kind);

// Parses a JSON config. Missing keys keep the preset of the task kind
// (task.kind if present, `default_kind` otherwise); unknown keys and type
// mismatches raise ConfigError with the dotted field path.
ExperimentConfig parse_config(std::string_view json_text, TaskKind default_kind = TaskKind::synthesis);
ExperimentConfig load_config(const std::filesystem::path& path, TaskKind default_kind = TaskKind::synthesis);

// Every field, keys sorted, 2-space indent. parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// 16 hex digits of FNV-1a over the canonical JSON of the fields that affect
// results (reservoir, task, sweep).
std::string config_hash(const ExperimentConfig& config);

struct ResultRecord {
  std::string config_hash;
  std::uint64_t reservoir_seed = 0;
  std::uint64_t task_seed = 0;
  std::string axis_name;             // empty for single runs
  std::optional<double> axis_value;  // empty for single runs
  std::optional<double> train_nmse;
  std::optional<double> test_nmse;
  std::optional<int> vpts;
  double wall_ms = 0.0;
  std::string error;  // sidecar only
};

// config_hash,reservoir_seed,task_seed,axis_name,axis_value,train_nmse,test_nmse,vpts,wall_ms
std::string results_csv_header();
// Floats as %.17g; missing or NaN values as empty fields.
std::string format_record(const ResultRecord& record);

struct RunReport {
  std::vector<ResultRecord> records;  // deterministic order
  std::size_t failed = 0;
  std::filesystem::path results_csv;

  bool all_failed() const noexcept { return !records.empty() && failed == records.size(); }
};

/// Runs the configured task, or the sweep if one is present, and writes into
/// config.output_dir:
///   results.csv       one ResultRecord per cell
///   results.json      library version, hash, resolved config, per-cell details
///   predictions.csv   with emit_predictions
///   features.csv      with emit_features (single runs only)
/// Failing cells are recorded, not thrown. Config problems throw ConfigError,
/// resource limits ResourceError.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace qrc
