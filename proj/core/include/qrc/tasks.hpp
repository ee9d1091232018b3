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

// Experiment drivers: pointwise regression/synthesis, open-loop and closed-loop
// prediction, and parameter sweeps over delays, register size or input scale.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/learner.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/signals.hpp"

namespace qrc {

enum class TaskKind { regression, synthesis, nonauto_predict, auto_predict };
enum class InputKind { grid, random_sinusoid };
enum class SplitMode { contiguous, interleaved };

std::string_view to_string(TaskKind v);
std::string_view to_string(InputKind v);
std::string_view to_string(SplitMode v);

struct InputSpec {
  InputKind kind = InputKind::random_sinusoid;
  double t_start = 0.0;
  double t_end = 2.0 * std::numbers::pi;
  int n = 1000;
  double f0 = 20.0;  // random_sinusoid only
  int n_terms = 5;   // random_sinusoid only
  std::uint64_t seed = 1;

  bool operator==(const InputSpec&) const = default;
};

TimeSeries make_input(const InputSpec& spec);

struct TaskSpec {
  TaskKind kind = TaskKind::synthesis;
  // Named target or group ("group1", "group2") for regression/synthesis.
  std::string target = "u2_minus_u3";
  InputSpec input;
  int n_train = 600;
  int n_test = 400;
  SplitMode split = SplitMode::contiguous;
  int delays = 0;
  int offset = 1;     // k, prediction tasks
  int horizon = 400;  // closed-loop steps
  bool bias = true;
  double ridge_lambda = kDefaultRidge;
  double vpts_threshold = kDefaultVptsThreshold;
  // Closed loop stops when |prediction| > divergence_factor * max |u_train|.
  double divergence_factor = 1e3;
  // Closed loop stops at the first threshold crossing (VPTS-only runs).
  bool stop_at_threshold = false;

  // Throws ArgumentError.
  void validate() const;

  bool operator==(const TaskSpec&) const = default;
};

// Presets: regression on a [0, 1] grid of 2500 points with an
// interleaved 2000/500 split; time-series tasks on the 1000-point random
// sinusoid with a contiguous 600/400 split.
TaskSpec regression_defaults();
TaskSpec timeseries_defaults(TaskKind kind);

struct PredictionPoint {
  std::string target;
  Eigen::Index sample = 0;  // index into the input series of the predicted value
  bool test = false;
  double truth = 0.0;
  double prediction = 0.0;
};

struct TaskResult {
  MetricReport train;                // nmse averaged over the target group
  std::optional<MetricReport> test;  // absent when n_test = 0
  std::vector<std::string> targets;
  std::vector<double> train_nmse_per_target;
  std::vector<double> test_nmse_per_target;
  std::vector<PredictionPoint> predictions;
  std::optional<int> diverged_at;  // closed loop only
  std::size_t reservoir_evaluations = 0;
};

// Regression and synthesis: y_t = F(x_t), fit on training samples only.
TaskResult run_pointwise(const TaskSpec& task, const RealMatrix& features, const TimeSeries& input);

// Open-loop prediction of u(t + k dt) from the delay-embedded features at t.
// Training columns are those whose target index is a training sample.
TaskResult run_nonautonomous(const TaskSpec& task, const RealMatrix& features, const TimeSeries& input, int k);

// Closed-loop prediction: one-step model trained on the training window, then
// fed its own output for `horizon` steps starting right after the training
// window. The delay buffer is warm-started with the last delays + 1 training
// samples; every step costs exactly one call to `map`. With teacher_forcing
// the true input is fed back instead.
TaskResult run_autonomous(const TaskSpec& task, const FeatureMap& map, const RealMatrix& features,
                          const TimeSeries& input, int horizon, bool teacher_forcing = false);

// Dispatches on task.kind given precomputed features of `input`. `map` is only
// called by closed-loop prediction.
TaskResult run_task_on_features(const TaskSpec& task, const FeatureMap& map, const RealMatrix& features,
                                const TimeSeries& input);

// Featurizes `input` once and dispatches on task.kind.
TaskResult run_task(const TaskSpec& task, const FeatureMap& map, const TimeSeries& input, unsigned workers = 0);
TaskResult run_task(const TaskSpec& task, const ReservoirParams& params, unsigned workers = 0);

TaskResult run_synthesis(const TaskSpec& task, const ReservoirParams& params);
TaskResult run_nonautonomous(const TaskSpec& task, const ReservoirParams& params, int k);
TaskResult run_autonomous(const TaskSpec& task, const ReservoirParams& params, int horizon);

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { delta, n_qubits, scale_s };
enum class SweepMetric { nmse, anmse, vpts };
// Which seed each trial seed drives.
enum class SeedMode { both, reservoir, task };

std::string_view to_string(SweepAxis v);
std::string_view to_string(SweepMetric v);
std::string_view to_string(SeedMode v);

struct SweepSpec {
  SweepAxis axis = SweepAxis::delta;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  SweepMetric metric = SweepMetric::nmse;
  SeedMode seed_mode = SeedMode::both;

  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

struct SweepCell {
  std::size_t value_index = 0;
  std::size_t seed_index = 0;
  double axis_value = 0.0;
  ReservoirConfig reservoir;  // fully resolved, including seed
  TaskSpec task;              // fully resolved, including input seed
  std::optional<TaskResult> result;
  std::string error;  // non-empty iff result is absent
  double wall_ms = 0.0;
};

struct SweepSummary {
  double axis_value = 0.0;
  double mean_metric = 0.0;  // NaN when every cell at this value failed
  int ok_cells = 0;
};

struct SweepOutcome {
  std::vector<SweepCell> cells;  // value-major, seed-minor
  std::vector<SweepSummary> summary;
};

// Applies the axis value and trial seed to copies of the base configuration.
void apply_axis(SweepAxis axis, double value, ReservoirConfig& reservoir, TaskSpec& task);
void apply_seed(SeedMode mode, std::uint64_t seed, ReservoirConfig& reservoir, TaskSpec& task);

// Metric of one finished cell: test NMSE (train NMSE without a test split) for
// nmse/anmse, VPTS for vpts.
double cell_metric(const TaskResult& result, SweepMetric metric);

/// Runs the base task for every (value, seed) pair.
///
/// Cells that share a reservoir and an input series reuse one feature matrix,
/// so a delay sweep evaluates the reservoir once per seed. Cells run on a
/// bounded pool of `workers` threads and are returned in deterministic order.
/// A failing cell records its error and does not abort the sweep.
SweepOutcome run_sweep(const SweepSpec& sweep, const ReservoirConfig& reservoir, const TaskSpec& task,
                       unsigned workers = 0);

}  // namespace qrc
