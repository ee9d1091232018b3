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


// qrc: command-line experiment runner.
//
//   qrc regress | synth | predict --mode open|closed | sweep   -> results files
//   qrc verify-encoding                                        -> report on stdout
//   qrc info                                                   -> version, presets
//
// Settings resolve as flags > --config file > presets for the task kind.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrc/encoding.hpp"
#include "qrc/errors.hpp"
#include "qrc/experiment.hpp"
#include "qrc/parallel.hpp"

namespace {

enum ExitCode { kOk = 0, kAllFailed = 1, kConfig = 2, kResource = 3, kRuntime = 4 };

struct Overrides {
  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed_reservoir;
  std::optional<std::uint64_t> seed_task;
  std::optional<int> delta;
  std::optional<int> n_qubits;
  std::optional<double> scale;
  std::optional<double> gamma;
  std::optional<std::string> target;
  std::optional<unsigned> workers;
  bool emit_features = false;
  bool emit_predictions = false;

  // predict
  std::string mode = "open";
  std::optional<int> offset;
  std::optional<int> horizon;

  // sweep
  std::optional<std::string> task_kind;
  std::optional<std::string> axis;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::optional<std::string> metric;
  std::optional<std::string> seed_mode;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--output-dir", o.output_dir, "Directory for results files");
  cmd->add_option("--seed-reservoir", o.seed_reservoir, "Reservoir parameter seed");
  cmd->add_option("--seed-task", o.seed_task, "Input series seed");
  cmd->add_option("--delta", o.delta, "Number of delays")->check(CLI::NonNegativeNumber);
  cmd->add_option("--n-qubits", o.n_qubits, "Register size");
  cmd->add_option("--scale", o.scale, "Input scale s");
  cmd->add_option("--gamma", o.gamma, "Dissipation strength");
  cmd->add_option("--workers", o.workers, "Worker threads (default: QRC_WORKERS or all cores)");
  cmd->add_flag("--emit-features", o.emit_features, "Write features.csv");
  cmd->add_flag("--emit-predictions", o.emit_predictions, "Write predictions.csv");
}

template <typename E>
E parse_enum(const std::string& s, std::initializer_list<E> all, const char* flag) {
  for (E e : all) {
    if (qrc::to_string(e) == s) return e;
  }
  throw qrc::ConfigError(flag, "unknown value '" + s + "'");
}

qrc::ExperimentConfig resolve(const Overrides& o, qrc::TaskKind kind, bool kind_from_file) {
  qrc::ExperimentConfig c =
      o.config_path.empty() ? qrc::preset_config(kind) : qrc::load_config(o.config_path, kind);
  if (!kind_from_file && c.task.kind != kind) {
    throw qrc::ConfigError("task.kind", "config says '" + std::string(qrc::to_string(c.task.kind)) +
                                            "' but the subcommand runs '" + std::string(qrc::to_string(kind)) + "'");
  }
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.seed_reservoir) c.reservoir.seed = *o.seed_reservoir;
  if (o.seed_task) c.task.input.seed = *o.seed_task;
  if (o.delta) c.task.delays = *o.delta;
  if (o.n_qubits) c.reservoir.n_qubits = *o.n_qubits;
  if (o.scale) c.reservoir.scale_s = *o.scale;
  if (o.gamma) c.reservoir.gamma = *o.gamma;
  if (o.target) c.task.target = *o.target;
  if (o.workers) c.workers = *o.workers;
  if (o.offset) c.task.offset = *o.offset;
  if (o.horizon) c.task.horizon = *o.horizon;
  c.emit_features = c.emit_features || o.emit_features;
  c.emit_predictions = c.emit_predictions || o.emit_predictions;
  return c;
}

int run_and_report(const qrc::ExperimentConfig& config) {
  const qrc::RunReport report = qrc::run_experiment(config);
  std::cout << qrc::results_csv_header() << "\n";
  for (const auto& rec : report.records) {
    std::cout << qrc::format_record(rec) << "\n";
    if (!rec.error.empty()) std::cerr << "cell failed (reservoir_seed=" << rec.reservoir_seed << "): " << rec.error << "\n";
  }
  std::cerr << "wrote " << report.results_csv.string() << " (" << report.records.size() - report.failed << "/"
            << report.records.size() << " cells ok)\n";
  return report.all_failed() ? kAllFailed : kOk;
}

int verify_encoding(const Overrides& o, int points, double tolerance) {
  qrc::ExperimentConfig c = o.config_path.empty() ? qrc::preset_config(qrc::TaskKind::synthesis)
                                                  : qrc::load_config(o.config_path);
  if (o.config_path.empty()) {
    c.reservoir.gamma = 0.0;
    c.reservoir.n_qubits = 2;
  }
  if (o.seed_reservoir) c.reservoir.seed = *o.seed_reservoir;
  if (o.seed_task) c.task.input.seed = *o.seed_task;
  if (o.n_qubits) c.reservoir.n_qubits = *o.n_qubits;
  if (o.scale) c.reservoir.scale_s = *o.scale;
  if (o.gamma) c.reservoir.gamma = *o.gamma;

  const qrc::ReservoirParams params = qrc::sample_parameters(c.reservoir);
  std::mt19937_64 rng(c.task.input.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (double& x : xs) x = unit(rng);

  const double gap = qrc::spectral_decomposition(qrc::build_hamiltonian(params, 0.0)).min_gap;
  const double deviation = qrc::verify_encoding_equivalence(params, xs);
  const bool ok = deviation <= tolerance;
  std::printf("n_qubits        %d\n", c.reservoir.n_qubits);
  std::printf("reservoir_seed  %llu\n", static_cast<unsigned long long>(c.reservoir.seed));
  std::printf("points          %d (uniform in [-1, 1], seed %llu)\n", points,
              static_cast<unsigned long long>(c.task.input.seed));
  std::printf("min_gap_H0      %.6e\n", gap);
  std::printf("max_deviation   %.6e\n", deviation);
  std::printf("tolerance       %.1e\n", tolerance);
  std::printf("status          %s\n", ok ? "PASS" : "FAIL");
  return ok ? kOk : kAllFailed;
}

int info(const std::string& kind_name) {
  const qrc::TaskKind kind = parse_enum(kind_name,
                                        {qrc::TaskKind::regression, qrc::TaskKind::synthesis,
                                         qrc::TaskKind::nonauto_predict, qrc::TaskKind::auto_predict},
                                        "--task");
  std::cout << "qrc " << qrc::library_version() << "\n"
            << "dense propagator limit: N <= " << qrc::kMaxDenseQubits << "\n"
            << "workers: " << qrc::resolve_workers() << " (override with " << qrc::kWorkersEnv << ")\n"
            << "preset config for task kind '" << kind_name << "':\n"
            << qrc::serialize_config(qrc::preset_config(kind));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian-encoded quantum reservoir computing experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qrc::library_version()));

  Overrides o;
  int points = 20;
  double tolerance = 1e-9;
  std::string info_kind = "synthesis";

  CLI::App* regress = app.add_subcommand("regress", "Pointwise regression on a regular input grid");
  add_common(regress, o);
  regress->add_option("--target", o.target, "Target function or group (group1, group2)");

  CLI::App* synth = app.add_subcommand("synth", "Pointwise synthesis on a random sinusoid series");
  add_common(synth, o);
  synth->add_option("--target", o.target, "Target function or group (group1, group2)");

  CLI::App* predict = app.add_subcommand("predict", "Open-loop or closed-loop time-series prediction");
  add_common(predict, o);
  predict->add_option("--mode", o.mode, "open (k-step, true inputs) or closed (fed back)")
      ->check(CLI::IsMember({"open", "closed"}));
  predict->add_option("--offset", o.offset, "k for open-loop prediction")->check(CLI::PositiveNumber);
  predict->add_option("--horizon", o.horizon, "Closed-loop steps")->check(CLI::NonNegativeNumber);

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep delays, register size or input scale over seeds");
  add_common(sweep, o);
  sweep->add_option("--task", o.task_kind, "regression | synthesis | nonauto_predict | auto_predict");
  sweep->add_option("--target", o.target, "Target function or group");
  sweep->add_option("--axis", o.axis, "delta | n_qubits | scale_s");
  sweep->add_option("--values", o.values, "Axis values, comma separated")->delimiter(',');
  sweep->add_option("--seeds", o.seeds, "Trial seeds, comma separated")->delimiter(',');
  sweep->add_option("--metric", o.metric, "nmse | anmse | vpts");
  sweep->add_option("--seed-mode", o.seed_mode, "both | reservoir | task");
  sweep->add_option("--offset", o.offset, "k for open-loop prediction")->check(CLI::PositiveNumber);
  sweep->add_option("--horizon", o.horizon, "Closed-loop steps")->check(CLI::NonNegativeNumber);

  CLI::App* verify = app.add_subcommand("verify-encoding", "Check the state-encoding equivalence (unitary case)");
  verify->add_option("--config", o.config_path, "JSON experiment config (reservoir section is used)")
      ->check(CLI::ExistingFile);
  verify->add_option("--seed-reservoir", o.seed_reservoir, "Reservoir parameter seed");
  verify->add_option("--seed-task", o.seed_task, "Seed of the random test inputs");
  verify->add_option("--n-qubits", o.n_qubits, "Register size (default 2)");
  verify->add_option("--scale", o.scale, "Input scale s");
  verify->add_option("--gamma", o.gamma, "Dissipation strength (must be 0)");
  verify->add_option("--points", points, "Number of random inputs")->check(CLI::PositiveNumber);
  verify->add_option("--tolerance", tolerance, "Pass threshold on the max deviation");

  CLI::App* info_cmd = app.add_subcommand("info", "Print version and preset configuration");
  info_cmd->add_option("--task", info_kind, "Task kind whose preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors count as config errors.
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*info_cmd) return info(info_kind);
    if (*verify) return verify_encoding(o, points, tolerance);
    if (*regress) return run_and_report(resolve(o, qrc::TaskKind::regression, false));
    if (*synth) return run_and_report(resolve(o, qrc::TaskKind::synthesis, false));
    if (*predict) {
      const auto kind = o.mode == "open" ? qrc::TaskKind::nonauto_predict : qrc::TaskKind::auto_predict;
      return run_and_report(resolve(o, kind, false));
    }
    if (*sweep) {
      qrc::TaskKind kind = qrc::TaskKind::synthesis;
      if (o.task_kind) {
        kind = parse_enum(*o.task_kind,
                          {qrc::TaskKind::regression, qrc::TaskKind::synthesis, qrc::TaskKind::nonauto_predict,
                           qrc::TaskKind::auto_predict},
                          "--task");
      }
      qrc::ExperimentConfig c = resolve(o, kind, !o.task_kind.has_value());
      qrc::SweepSpec s = c.sweep.value_or(qrc::SweepSpec{});
      if (o.axis) s.axis = parse_enum(*o.axis, {qrc::SweepAxis::delta, qrc::SweepAxis::n_qubits, qrc::SweepAxis::scale_s}, "--axis");
      if (!o.values.empty()) s.values = o.values;
      if (!o.seeds.empty()) s.seeds = o.seeds;
      if (o.metric) s.metric = parse_enum(*o.metric, {qrc::SweepMetric::nmse, qrc::SweepMetric::anmse, qrc::SweepMetric::vpts}, "--metric");
      if (o.seed_mode) {
        s.seed_mode = parse_enum(*o.seed_mode, {qrc::SeedMode::both, qrc::SeedMode::reservoir, qrc::SeedMode::task},
                                 "--seed-mode");
      }
      if (s.seeds.empty()) s.seeds = {c.reservoir.seed};
      c.sweep = s;
      return run_and_report(c);
    }
  } catch (const qrc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const qrc::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}
