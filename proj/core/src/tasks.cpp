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

#include "qrc/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <memory>

#include "qrc/errors.hpp"
#include "qrc/parallel.hpp"

namespace qrc {

std::string_view to_string(TaskKind v) {
  switch (v) {
    case TaskKind::regression: return "regression";
    case TaskKind::synthesis: return "synthesis";
    case TaskKind::nonauto_predict: return "nonauto_predict";
    case TaskKind::auto_predict: return "auto_predict";
  }
  return "?";
}

std::string_view to_string(InputKind v) { return v == InputKind::grid ? "grid" : "random_sinusoid"; }
std::string_view to_string(SplitMode v) { return v == SplitMode::contiguous ? "contiguous" : "interleaved"; }

std::string_view to_string(SweepAxis v) {
  switch (v) {
    case SweepAxis::delta: return "delta";
    case SweepAxis::n_qubits: return "n_qubits";
    case SweepAxis::scale_s: return "scale_s";
  }
  return "?";
}

std::string_view to_string(SweepMetric v) {
  switch (v) {
    case SweepMetric::nmse: return "nmse";
    case SweepMetric::anmse: return "anmse";
    case SweepMetric::vpts: return "vpts";
  }
  return "?";
}

std::string_view to_string(SeedMode v) {
  switch (v) {
    case SeedMode::both: return "both";
    case SeedMode::reservoir: return "reservoir";
    case SeedMode::task: return "task";
  }
  return "?";
}

TimeSeries make_input(const InputSpec& spec) {
  if (spec.kind == InputKind::grid) return gen_grid_input(spec.t_start, spec.t_end, spec.n);
  return gen_random_sinusoid(spec.seed, spec.f0, spec.n_terms, spec.n, spec.t_start, spec.t_end);
}

void TaskSpec::validate() const {
  if (input.n < 2) throw ArgumentError("task: input.n must be >= 2");
  if (n_train < 1 || n_test < 0 || n_train + n_test != input.n) {
    throw ArgumentError("task: n_train + n_test must equal input.n (" + std::to_string(n_train) + " + " +
                        std::to_string(n_test) + " != " + std::to_string(input.n) + ")");
  }
  if (delays < 0 || delays >= input.n) throw ArgumentError("task: delays must satisfy 0 <= delays < input.n");
  if (!(ridge_lambda > 0.0)) throw ArgumentError("task: ridge_lambda must be > 0");
  if (!(vpts_threshold > 0.0)) throw ArgumentError("task: vpts_threshold must be > 0");
  if (kind == TaskKind::regression || kind == TaskKind::synthesis) {
    if (!is_known_target(target)) throw ArgumentError("task: unknown target '" + target + "'");
  }
  if (kind == TaskKind::nonauto_predict && (offset < 1 || offset >= input.n)) {
    throw ArgumentError("task: prediction offset must satisfy 1 <= k < input.n");
  }
  if (kind == TaskKind::auto_predict) {
    if (horizon < 0 || horizon > n_test) throw ArgumentError("task: horizon must lie in [0, n_test]");
    if (n_train - 1 - delays < 0) throw ArgumentError("task: training window shorter than the delay buffer");
  }
}

TaskSpec regression_defaults() {
  TaskSpec t;
  t.kind = TaskKind::regression;
  t.target = "trigpoly";
  t.input = InputSpec{InputKind::grid, 0.0, 1.0, 2500, 20.0, 5, 1};
  t.n_train = 2000;
  t.n_test = 500;
  t.split = SplitMode::interleaved;
  return t;
}

TaskSpec timeseries_defaults(TaskKind kind) {
  TaskSpec t;
  t.kind = kind;
  t.target = "u2_minus_u3";
  t.input = InputSpec{};
  t.n_train = 600;
  t.n_test = 400;
  t.split = SplitMode::contiguous;
  t.horizon = 400;
  return t;
}

namespace {

// Test membership of sample index j in a series of n samples.
bool is_test_sample(const TaskSpec& task, Eigen::Index j) {
  const auto n = static_cast<Eigen::Index>(task.input.n);
  if (task.split == SplitMode::contiguous) return j >= task.n_train;
  // n_test samples spread evenly across the series.
  return ((j + 1) * task.n_test) / n > (j * task.n_test) / n;
}

std::vector<double> row_of(const RealMatrix& m, Eigen::Index r) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

RealMatrix select_columns(const RealMatrix& m, const std::vector<Eigen::Index>& cols) {
  RealMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(cols[i]);
  return out;
}

void require_series(const RealMatrix& features, const TimeSeries& input, const TaskSpec& task) {
  task.validate();
  if (static_cast<int>(input.size()) != task.input.n || features.cols() != task.input.n) {
    throw ArgumentError("task: features/input length does not match input.n");
  }
}

// Fits every row of `targets` (sample-indexed, one row per target name) from
// the embedded features, where embedded column c predicts sample
// c + delays + offset. Fills train/test metrics and prediction points.
TaskResult fit_and_score(const TaskSpec& task, const EmbeddedFeatures& emb, const RealMatrix& targets,
                         const std::vector<std::string>& names, int offset) {
  std::vector<Eigen::Index> train_cols, test_cols;
  const auto n = static_cast<Eigen::Index>(task.input.n);
  for (Eigen::Index c = 0; c < emb.values.cols(); ++c) {
    const Eigen::Index target_index = emb.sample_index(c) + offset;
    if (target_index >= n) break;
    (is_test_sample(task, target_index) ? test_cols : train_cols).push_back(c);
  }
  if (train_cols.size() < 2) throw ArgumentError("task: fewer than 2 training samples after embedding");

  auto target_matrix = [&](const std::vector<Eigen::Index>& cols) {
    RealMatrix y(targets.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) y.col(static_cast<Eigen::Index>(i)) = targets.col(emb.sample_index(cols[i]) + offset);
    return y;
  };

  const RealMatrix x_train = select_columns(emb.values, train_cols);
  const RealMatrix y_train = target_matrix(train_cols);
  const ReadoutWeights w = ridge_fit(x_train, y_train, task.ridge_lambda, task.bias);

  TaskResult result;
  result.targets = names;
  const RealMatrix p_train = predict(w, x_train);

  double train_sum = 0.0;
  for (Eigen::Index d = 0; d < targets.rows(); ++d) {
    const double v = nmse(row_of(y_train, d), row_of(p_train, d));
    result.train_nmse_per_target.push_back(v);
    train_sum += v;
  }
  result.train.nmse = train_sum / static_cast<double>(targets.rows());

  RealMatrix y_test, p_test;
  if (!test_cols.empty()) {
    const RealMatrix x_test = select_columns(emb.values, test_cols);
    y_test = target_matrix(test_cols);
    p_test = predict(w, x_test);
    MetricReport test;
    double test_sum = 0.0;
    for (Eigen::Index d = 0; d < targets.rows(); ++d) {
      const double v = nmse(row_of(y_test, d), row_of(p_test, d));
      result.test_nmse_per_target.push_back(v);
      test_sum += v;
    }
    test.nmse = test_sum / static_cast<double>(targets.rows());
    if (targets.rows() == 1) test.step_errors = normalized_errors(row_of(y_test, 0), row_of(p_test, 0));
    result.test = std::move(test);
  }

  for (Eigen::Index d = 0; d < targets.rows(); ++d) {
    auto emit = [&](const std::vector<Eigen::Index>& cols, const RealMatrix& y, const RealMatrix& p, bool test) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        result.predictions.push_back({names[static_cast<std::size_t>(d)], emb.sample_index(cols[i]) + offset, test,
                                      y(d, static_cast<Eigen::Index>(i)), p(d, static_cast<Eigen::Index>(i))});
      }
    };
    emit(train_cols, y_train, p_train, false);
    if (!test_cols.empty()) emit(test_cols, y_test, p_test, true);
  }
  return result;
}

}  // namespace

TaskResult run_pointwise(const TaskSpec& task, const RealMatrix& features, const TimeSeries& input) {
  require_series(features, input, task);
  const std::vector<std::string> names = target_group(task.target);
  RealMatrix targets(static_cast<Eigen::Index>(names.size()), task.input.n);
  for (std::size_t d = 0; d < names.size(); ++d) {
    const std::vector<double> y = named_target(names[d], input.values);
    for (std::size_t t = 0; t < y.size(); ++t) targets(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(t)) = y[t];
  }
  return fit_and_score(task, delay_embed(features, task.delays, task.bias), targets, names, 0);
}

TaskResult run_nonautonomous(const TaskSpec& task, const RealMatrix& features, const TimeSeries& input, int k) {
  require_series(features, input, task);
  if (k < 1 || k >= task.input.n) throw ArgumentError("run_nonautonomous: offset k must satisfy 1 <= k < input.n");
  RealMatrix targets(1, task.input.n);
  for (int t = 0; t < task.input.n; ++t) targets(0, t) = input.values[static_cast<std::size_t>(t)];
  return fit_and_score(task, delay_embed(features, task.delays, task.bias), targets, {"u_shift"}, k);
}

TaskResult run_autonomous(const TaskSpec& task, const FeatureMap& map, const RealMatrix& features,
                          const TimeSeries& input, int horizon, bool teacher_forcing) {
  require_series(features, input, task);
  if (horizon < 0 || horizon > task.n_test) throw ArgumentError("run_autonomous: horizon must lie in [0, n_test]");
  if (task.n_train - 1 - task.delays < 0) {
    throw ArgumentError("run_autonomous: training window shorter than the delay buffer");
  }

  // One-step-ahead model fit on the training window only.
  const EmbeddedFeatures emb = delay_embed(features, task.delays, task.bias);
  std::vector<Eigen::Index> train_cols;
  for (Eigen::Index c = 0; c < emb.values.cols(); ++c) {
    if (emb.sample_index(c) + 1 < task.n_train) train_cols.push_back(c);
  }
  if (train_cols.size() < 2) throw ArgumentError("run_autonomous: fewer than 2 training samples after embedding");
  RealMatrix x_train = select_columns(emb.values, train_cols);
  RealMatrix y_train(1, static_cast<Eigen::Index>(train_cols.size()));
  for (std::size_t i = 0; i < train_cols.size(); ++i) {
    y_train(0, static_cast<Eigen::Index>(i)) = input.values[static_cast<std::size_t>(emb.sample_index(train_cols[i]) + 1)];
  }
  const ReadoutWeights w = ridge_fit(x_train, y_train, task.ridge_lambda, task.bias);

  TaskResult result;
  result.targets = {"u_next"};
  const RealMatrix p_train = predict(w, x_train);
  // A constant training window has no NMSE; VPTS below is still defined.
  try {
    result.train.nmse = nmse(row_of(y_train, 0), row_of(p_train, 0));
  } catch (const UndefinedMetricError&) {
    result.train.nmse = std::numeric_limits<double>::quiet_NaN();
  }
  result.train_nmse_per_target.push_back(result.train.nmse);
  for (std::size_t i = 0; i < train_cols.size(); ++i) {
    result.predictions.push_back({"u_next", emb.sample_index(train_cols[i]) + 1, false, y_train(0, static_cast<Eigen::Index>(i)),
                                  p_train(0, static_cast<Eigen::Index>(i))});
  }

  MetricReport test;
  result.reservoir_evaluations = 0;
  if (horizon == 0) {
    test.nmse = std::numeric_limits<double>::quiet_NaN();
    test.vpts = 0;
    result.test = std::move(test);
    return result;
  }

  const auto first = static_cast<std::size_t>(task.n_train);
  const std::span<const double> truth(input.values.data() + first, static_cast<std::size_t>(horizon));
  double train_max = 0.0;
  for (std::size_t i = 0; i < first; ++i) train_max = std::max(train_max, std::abs(input.values[i]));
  const double bound = task.divergence_factor * std::max(train_max, std::numeric_limits<double>::min());

  // Step errors are normalized by the variance of the whole evaluation window
  // (so an early stop agrees with the full run on the prefix). A constant
  // window has no variance; its mean square, or 1 for an all-zero window,
  // stands in so a fixed point that is tracked still counts as valid.
  double normalizer = 0.0;
  bool constant_truth = false;
  {
    double mean = 0.0;
    for (double v : truth) mean += v;
    mean /= static_cast<double>(truth.size());
    for (double v : truth) normalizer += (v - mean) * (v - mean);
    normalizer /= static_cast<double>(truth.size());
    if (std::all_of(truth.begin(), truth.end(), [&](double v) { return v == truth.front(); })) {
      mean = truth.front();
      constant_truth = true;
      normalizer = mean * mean > 0.0 ? mean * mean : 1.0;
    }
  }

  std::deque<RealVector> history;  // newest first
  for (int j = 0; j <= task.delays; ++j) history.push_back(features.col(task.n_train - 1 - j));

  std::vector<double> predictions;
  predictions.reserve(static_cast<std::size_t>(horizon));
  std::vector<RealVector> window(history.begin(), history.end());
  for (int i = 0; i < horizon; ++i) {
    std::copy(history.begin(), history.end(), window.begin());
    const double y = predict_one(w, embed_window(window, task.bias));
    predictions.push_back(y);
    result.predictions.push_back({"u_next", static_cast<Eigen::Index>(first) + i, true, truth[static_cast<std::size_t>(i)], y});
    if (!std::isfinite(y) || std::abs(y) > bound) {
      result.diverged_at = i;
      break;
    }
    const double feed = teacher_forcing ? truth[static_cast<std::size_t>(i)] : y;
    history.push_front(map(feed));
    history.pop_back();
    ++result.reservoir_evaluations;
    if (task.stop_at_threshold) {
      const double d = truth[static_cast<std::size_t>(i)] - y;
      const double e = d * d / normalizer;
      if (!(e < task.vpts_threshold)) break;
    }
  }

  const bool complete = static_cast<int>(predictions.size()) == horizon && !result.diverged_at;
  test.step_errors.resize(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = truth[i] - predictions[i];
    test.step_errors[i] = std::isfinite(d) ? d * d / normalizer : std::numeric_limits<double>::infinity();
  }
  if (result.diverged_at) {
    test.nmse = std::numeric_limits<double>::infinity();
  } else if (!complete || constant_truth) {
    test.nmse = std::numeric_limits<double>::quiet_NaN();
  } else {
    test.nmse = nmse(truth, predictions);
  }
  test.step_errors.resize(static_cast<std::size_t>(horizon), std::numeric_limits<double>::infinity());
  test.vpts = vpts_from_errors(test.step_errors, task.vpts_threshold);
  result.test = std::move(test);
  return result;
}

TaskResult run_task_on_features(const TaskSpec& task, const FeatureMap& map, const RealMatrix& features,
                                const TimeSeries& input) {
  TaskResult r;
  switch (task.kind) {
    case TaskKind::regression:
    case TaskKind::synthesis:
      r = run_pointwise(task, features, input);
      break;
    case TaskKind::nonauto_predict:
      r = run_nonautonomous(task, features, input, task.offset);
      break;
    case TaskKind::auto_predict:
      r = run_autonomous(task, map, features, input, task.horizon);
      break;
  }
  r.reservoir_evaluations += static_cast<std::size_t>(features.cols());
  return r;
}

TaskResult run_task(const TaskSpec& task, const FeatureMap& map, const TimeSeries& input, unsigned workers) {
  task.validate();
  return run_task_on_features(task, map, featurize_batch(map, input.values, workers), input);
}

TaskResult run_task(const TaskSpec& task, const ReservoirParams& params, unsigned workers) {
  return run_task(task, ReservoirFeatureMap(params), make_input(task.input), workers);
}

TaskResult run_synthesis(const TaskSpec& task, const ReservoirParams& params) {
  TaskSpec t = task;
  if (t.kind != TaskKind::regression) t.kind = TaskKind::synthesis;
  return run_task(t, params);
}

TaskResult run_nonautonomous(const TaskSpec& task, const ReservoirParams& params, int k) {
  TaskSpec t = task;
  t.kind = TaskKind::nonauto_predict;
  t.offset = k;
  if (k < 1) throw ArgumentError("run_nonautonomous: offset k must be >= 1");
  return run_task(t, params);
}

TaskResult run_autonomous(const TaskSpec& task, const ReservoirParams& params, int horizon) {
  TaskSpec t = task;
  t.kind = TaskKind::auto_predict;
  t.horizon = horizon;
  return run_task(t, params);
}

// ---------------------------------------------------------------------------
// Sweeps

void SweepSpec::validate() const {
  if (values.empty()) throw ArgumentError("sweep: values must not be empty");
  if (seeds.empty()) throw ArgumentError("sweep: seeds must not be empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("sweep: non-finite axis value");
    if (axis != SweepAxis::scale_s && v != std::floor(v)) {
      throw ArgumentError("sweep: axis '" + std::string(to_string(axis)) + "' takes integer values");
    }
  }
}

void apply_axis(SweepAxis axis, double value, ReservoirConfig& reservoir, TaskSpec& task) {
  switch (axis) {
    case SweepAxis::delta:
      task.delays = static_cast<int>(value);
      break;
    case SweepAxis::n_qubits:
      reservoir.n_qubits = static_cast<int>(value);
      break;
    case SweepAxis::scale_s:
      reservoir.scale_s = value;
      break;
  }
}

void apply_seed(SeedMode mode, std::uint64_t seed, ReservoirConfig& reservoir, TaskSpec& task) {
  if (mode != SeedMode::task) reservoir.seed = seed;
  if (mode != SeedMode::reservoir) task.input.seed = seed;
}

double cell_metric(const TaskResult& result, SweepMetric metric) {
  if (metric == SweepMetric::vpts) {
    if (!result.test || !result.test->vpts) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(*result.test->vpts);
  }
  return result.test ? result.test->nmse : result.train.nmse;
}

namespace {

struct FeatureGroup {
  ReservoirConfig reservoir;
  InputSpec input;
  std::unique_ptr<ReservoirParams> params;
  TimeSeries series;
  RealMatrix features;
  std::string error;
  double wall_ms = 0.0;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SweepOutcome run_sweep(const SweepSpec& sweep, const ReservoirConfig& reservoir, const TaskSpec& task,
                       unsigned workers) {
  sweep.validate();
  workers = resolve_workers(workers);

  SweepOutcome out;
  for (std::size_t v = 0; v < sweep.values.size(); ++v) {
    for (std::size_t s = 0; s < sweep.seeds.size(); ++s) {
      SweepCell cell;
      cell.value_index = v;
      cell.seed_index = s;
      cell.axis_value = sweep.values[v];
      cell.reservoir = reservoir;
      cell.task = task;
      apply_axis(sweep.axis, sweep.values[v], cell.reservoir, cell.task);
      apply_seed(sweep.seed_mode, sweep.seeds[s], cell.reservoir, cell.task);
      out.cells.push_back(std::move(cell));
    }
  }

  // Cells sharing (reservoir, input) share one feature matrix.
  std::vector<FeatureGroup> groups;
  std::vector<std::size_t> group_of(out.cells.size());
  for (std::size_t c = 0; c < out.cells.size(); ++c) {
    const auto& cell = out.cells[c];
    std::size_t g = 0;
    while (g < groups.size() && !(groups[g].reservoir == cell.reservoir && groups[g].input == cell.task.input)) ++g;
    if (g == groups.size()) {
      FeatureGroup fg;
      fg.reservoir = cell.reservoir;
      fg.input = cell.task.input;
      groups.push_back(std::move(fg));
    }
    group_of[c] = g;
  }

  for (auto& g : groups) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      g.params = std::make_unique<ReservoirParams>(sample_parameters(g.reservoir));
      g.series = make_input(g.input);
      g.features = featurize_batch(*g.params, g.series.values, workers);
    } catch (const std::exception& e) {
      g.error = e.what();
    }
    g.wall_ms = ms_since(t0);
  }

  parallel_for(out.cells.size(), workers, [&](std::size_t c) {
    SweepCell& cell = out.cells[c];
    const FeatureGroup& g = groups[group_of[c]];
    const auto t0 = std::chrono::steady_clock::now();
    if (!g.error.empty()) {
      cell.error = g.error;
      cell.wall_ms = g.wall_ms;
      return;
    }
    try {
      cell.result = run_task_on_features(cell.task, ReservoirFeatureMap(*g.params), g.features, g.series);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cell.wall_ms = g.wall_ms + ms_since(t0);
  });

  for (std::size_t v = 0; v < sweep.values.size(); ++v) {
    SweepSummary sum;
    sum.axis_value = sweep.values[v];
    double acc = 0.0;
    for (const auto& cell : out.cells) {
      if (cell.value_index != v || !cell.result) continue;
      acc += cell_metric(*cell.result, sweep.metric);
      ++sum.ok_cells;
    }
    sum.mean_metric = sum.ok_cells ? acc / sum.ok_cells : std::numeric_limits<double>::quiet_NaN();
    out.summary.push_back(sum);
  }
  return out;
}

}  // namespace qrc
