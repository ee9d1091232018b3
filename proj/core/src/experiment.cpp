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

#include "qrc/experiment.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qrc/errors.hpp"
#include "qrc/parallel.hpp"

namespace qrc {

using nlohmann::json;

std::string_view library_version() { return QRC_VERSION_STRING; }

namespace {

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> all, const std::string& path) {
  std::string options;
  for (E e : all) {
    if (to_string(e) == s) return e;
    options += (options.empty() ? "" : ", ") + std::string(to_string(e));
  }
  throw ConfigError(path, "unknown value '" + s + "' (expected one of: " + options + ")");
}

constexpr auto kObservableSets = {ObservableSet::z_only, ObservableSet::xyz, ObservableSet::xyz_plus_zz};
constexpr auto kInitialStates = {InitialStateMode::haar_random, InitialStateMode::all_ground};
constexpr auto kDissipation = {DissipationMode::projector, DissipationMode::lowering};
constexpr auto kPropagators = {DensityPropagator::chebyshev, DensityPropagator::dense};
constexpr auto kTaskKinds = {TaskKind::regression, TaskKind::synthesis, TaskKind::nonauto_predict,
                             TaskKind::auto_predict};
constexpr auto kInputKinds = {InputKind::grid, InputKind::random_sinusoid};
constexpr auto kSplits = {SplitMode::contiguous, SplitMode::interleaved};
constexpr auto kAxes = {SweepAxis::delta, SweepAxis::n_qubits, SweepAxis::scale_s};
constexpr auto kMetrics = {SweepMetric::nmse, SweepMetric::anmse, SweepMetric::vpts};
constexpr auto kSeedModes = {SeedMode::both, SeedMode::reservoir, SeedMode::task};

// Reads the keys of one JSON object and rejects whatever is left over.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      const auto x = v->get<std::int64_t>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw ConfigError(field(key), "out of range");
      }
      out = static_cast<int>(x);
    }
  }

  void seed(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) out = as_seed(*v, field(key));
  }

  void count(const std::string& key, unsigned& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned() || v->get<std::uint64_t>() > 4096) {
        throw ConfigError(field(key), "expected an integer in [0, 4096]");
      }
      out = v->get<unsigned>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  template <typename E>
  void enumeration(const std::string& key, E& out, std::initializer_list<E> all) {
    std::string s;
    string(key, s);
    if (find(key)) out = enum_from(s, all, field(key));
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.contains(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }
  }

  static std::uint64_t as_seed(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer seed");
    return v.get<std::uint64_t>();
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_reservoir(const json& j, ReservoirConfig& r) {
  ObjectReader in(j, "reservoir");
  in.integer("n_qubits", r.n_qubits);
  in.number("delta0", r.delta0);
  in.number("omega0", r.omega0);
  in.number("v0", r.v0);
  in.number("heterogeneity", r.heterogeneity);
  in.number("gamma", r.gamma);
  in.number("tau", r.tau);
  in.number("scale_s", r.scale_s);
  in.enumeration("observables", r.observables, kObservableSets);
  in.enumeration("initial_state", r.initial_state, kInitialStates);
  in.enumeration("dissipation", r.dissipation, kDissipation);
  in.seed("seed", r.seed);
  in.number("unitary_threshold", r.unitary_threshold);
  in.enumeration("propagator", r.propagator, kPropagators);
  in.finish();
}

void read_input(const json& j, InputSpec& s) {
  ObjectReader in(j, "task.input");
  in.enumeration("kind", s.kind, kInputKinds);
  in.number("t_start", s.t_start);
  in.number("t_end", s.t_end);
  in.integer("n", s.n);
  in.number("f0", s.f0);
  in.integer("n_terms", s.n_terms);
  in.seed("seed", s.seed);
  in.finish();
}

void read_task(const json& j, TaskSpec& t) {
  ObjectReader in(j, "task");
  in.enumeration("kind", t.kind, kTaskKinds);
  in.string("target", t.target);
  if (const json* v = in.find("input")) read_input(*v, t.input);
  in.integer("n_train", t.n_train);
  in.integer("n_test", t.n_test);
  in.enumeration("split", t.split, kSplits);
  in.integer("delays", t.delays);
  in.integer("offset", t.offset);
  in.integer("horizon", t.horizon);
  in.boolean("bias", t.bias);
  in.number("ridge_lambda", t.ridge_lambda);
  in.number("vpts_threshold", t.vpts_threshold);
  in.number("divergence_factor", t.divergence_factor);
  in.boolean("stop_at_threshold", t.stop_at_threshold);
  in.finish();
}

SweepSpec read_sweep(const json& j) {
  SweepSpec s;
  ObjectReader in(j, "sweep");
  in.enumeration("axis", s.axis, kAxes);
  if (const json* v = in.find("values")) {
    if (!v->is_array()) throw ConfigError("sweep.values", "expected an array of numbers");
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) throw ConfigError("sweep.values[" + std::to_string(i) + "]", "expected a number");
      s.values.push_back((*v)[i].get<double>());
    }
  }
  if (const json* v = in.find("seeds")) {
    if (!v->is_array()) throw ConfigError("sweep.seeds", "expected an array of seeds");
    for (std::size_t i = 0; i < v->size(); ++i) {
      s.seeds.push_back(ObjectReader::as_seed((*v)[i], "sweep.seeds[" + std::to_string(i) + "]"));
    }
  }
  in.enumeration("metric", s.metric, kMetrics);
  in.enumeration("seed_mode", s.seed_mode, kSeedModes);
  in.finish();
  return s;
}

json to_json(const ReservoirConfig& r) {
  return json{{"n_qubits", r.n_qubits},
              {"delta0", r.delta0},
              {"omega0", r.omega0},
              {"v0", r.v0},
              {"heterogeneity", r.heterogeneity},
              {"gamma", r.gamma},
              {"tau", r.tau},
              {"scale_s", r.scale_s},
              {"observables", to_string(r.observables)},
              {"initial_state", to_string(r.initial_state)},
              {"dissipation", to_string(r.dissipation)},
              {"seed", r.seed},
              {"unitary_threshold", r.unitary_threshold},
              {"propagator", to_string(r.propagator)}};
}

json to_json(const TaskSpec& t) {
  const json input{{"kind", to_string(t.input.kind)}, {"t_start", t.input.t_start}, {"t_end", t.input.t_end},
                   {"n", t.input.n},                  {"f0", t.input.f0},           {"n_terms", t.input.n_terms},
                   {"seed", t.input.seed}};
  return json{{"kind", to_string(t.kind)},
              {"target", t.target},
              {"input", input},
              {"n_train", t.n_train},
              {"n_test", t.n_test},
              {"split", to_string(t.split)},
              {"delays", t.delays},
              {"offset", t.offset},
              {"horizon", t.horizon},
              {"bias", t.bias},
              {"ridge_lambda", t.ridge_lambda},
              {"vpts_threshold", t.vpts_threshold},
              {"divergence_factor", t.divergence_factor},
              {"stop_at_threshold", t.stop_at_threshold}};
}

json to_json(const SweepSpec& s) {
  return json{{"axis", to_string(s.axis)},
              {"values", s.values},
              {"seeds", s.seeds},
              {"metric", to_string(s.metric)},
              {"seed_mode", to_string(s.seed_mode)}};
}

json to_json(const ExperimentConfig& c) {
  json j{{"reservoir", to_json(c.reservoir)},
         {"task", to_json(c.task)},
         {"output_dir", c.output_dir},
         {"emit_features", c.emit_features},
         {"emit_predictions", c.emit_predictions},
         {"workers", c.workers}};
  if (c.sweep) j["sweep"] = to_json(*c.sweep);
  return j;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_optional(const std::optional<double>& v) { return v ? fmt_double(*v) : ""; }

json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("output_dir", "cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("output_dir", "write failed for " + path.string());
}

ResultRecord record_from(const std::string& hash, const ReservoirConfig& r, const TaskSpec& t,
                         const std::string& axis, std::optional<double> value, const TaskResult* result,
                         const std::string& error, double wall_ms) {
  ResultRecord rec;
  rec.config_hash = hash;
  rec.reservoir_seed = r.seed;
  rec.task_seed = t.input.seed;
  rec.axis_name = axis;
  rec.axis_value = value;
  rec.wall_ms = wall_ms;
  rec.error = error;
  if (result) {
    rec.train_nmse = result->train.nmse;
    if (result->test) {
      rec.test_nmse = result->test->nmse;
      rec.vpts = result->test->vpts;
    }
    if (t.kind != TaskKind::auto_predict) rec.vpts.reset();
  }
  return rec;
}

json cell_json(const ResultRecord& rec, const TaskResult* result, const TaskSpec& t, const ReservoirConfig& r) {
  json j{{"reservoir_seed", rec.reservoir_seed},
         {"task_seed", rec.task_seed},
         {"axis_value", rec.axis_value ? json_number(*rec.axis_value) : json(nullptr)},
         {"n_qubits", r.n_qubits},
         {"scale_s", r.scale_s},
         {"delays", t.delays},
         {"error", rec.error.empty() ? json(nullptr) : json(rec.error)}};
  if (result) {
    json train = json::array(), test = json::array();
    for (double v : result->train_nmse_per_target) train.push_back(json_number(v));
    for (double v : result->test_nmse_per_target) test.push_back(json_number(v));
    j["targets"] = result->targets;
    j["train_nmse_per_target"] = train;
    j["test_nmse_per_target"] = test;
    j["reservoir_evaluations"] = result->reservoir_evaluations;
    j["diverged_at"] = result->diverged_at ? json(*result->diverged_at) : json(nullptr);
  }
  return j;
}

std::string prediction_rows(const ResultRecord& rec, const TaskResult& result) {
  std::string out;
  for (const auto& p : result.predictions) {
    out += std::to_string(rec.reservoir_seed) + "," + std::to_string(rec.task_seed) + "," +
           fmt_optional(rec.axis_value) + "," + p.target + "," + std::to_string(p.sample) + "," +
           (p.test ? "test" : "train") + "," + fmt_double(p.truth) + "," + fmt_double(p.prediction) + "\n";
  }
  return out;
}

constexpr const char* kPredictionsHeader = "reservoir_seed,task_seed,axis_value,target,sample,split,truth,prediction\n";

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void ExperimentConfig::validate() const {
  // ResourceError from the reservoir passes through unchanged.
  try {
    reservoir.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError("reservoir", e.what());
  }
  try {
    task.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError("task", e.what());
  }
  if (sweep) {
    try {
      sweep->validate();
    } catch (const ArgumentError& e) {
      throw ConfigError("sweep", e.what());
    }
    if (emit_features) throw ConfigError("emit_features", "feature dumps are available for single runs only");
  }
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

ExperimentConfig preset_config(TaskKind kind) {
  ExperimentConfig c;
  if (kind == TaskKind::regression) {
    c.task = regression_defaults();
    return c;
  }
  c.task = timeseries_defaults(kind);
  c.reservoir.gamma = 1e-8;
  c.reservoir.scale_s = kTimeSeriesScale;
  return c;
}

ExperimentConfig parse_config(std::string_view json_text, TaskKind default_kind) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");

  TaskKind kind = default_kind;
  if (auto t = root.find("task"); t != root.end() && t->is_object()) {
    if (auto k = t->find("kind"); k != t->end()) {
      if (!k->is_string()) throw ConfigError("task.kind", "expected a string");
      kind = enum_from(k->get<std::string>(), kTaskKinds, "task.kind");
    }
  }

  ExperimentConfig c = preset_config(kind);
  ObjectReader in(root, "");
  if (const json* v = in.find("reservoir")) read_reservoir(*v, c.reservoir);
  if (const json* v = in.find("task")) read_task(*v, c.task);
  if (const json* v = in.find("sweep")) {
    if (!v->is_null()) c.sweep = read_sweep(*v);
  }
  in.string("output_dir", c.output_dir);
  in.boolean("emit_features", c.emit_features);
  in.boolean("emit_predictions", c.emit_predictions);
  in.count("workers", c.workers);
  in.finish();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, TaskKind default_kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), default_kind);
}

std::string serialize_config(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& config) {
  json j{{"reservoir", to_json(config.reservoir)}, {"task", to_json(config.task)}};
  if (config.sweep) j["sweep"] = to_json(*config.sweep);
  const std::string canonical = j.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string results_csv_header() {
  return "config_hash,reservoir_seed,task_seed,axis_name,axis_value,train_nmse,test_nmse,vpts,wall_ms";
}

std::string format_record(const ResultRecord& r) {
  return r.config_hash + "," + std::to_string(r.reservoir_seed) + "," + std::to_string(r.task_seed) + "," +
         r.axis_name + "," + fmt_optional(r.axis_value) + "," + fmt_optional(r.train_nmse) + "," +
         fmt_optional(r.test_nmse) + "," + (r.vpts ? std::to_string(*r.vpts) : "") + "," + fmt_double(r.wall_ms);
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("output_dir", "cannot create " + dir.string() + ": " + ec.message());

  const std::string hash = config_hash(config);
  RunReport report;
  json cells = json::array();
  std::string predictions = kPredictionsHeader;

  if (config.sweep) {
    const SweepOutcome outcome = run_sweep(*config.sweep, config.reservoir, config.task, config.workers);
    const std::string axis(to_string(config.sweep->axis));
    for (const SweepCell& cell : outcome.cells) {
      const TaskResult* result = cell.result ? &*cell.result : nullptr;
      ResultRecord rec =
          record_from(hash, cell.reservoir, cell.task, axis, cell.axis_value, result, cell.error, cell.wall_ms);
      cells.push_back(cell_json(rec, result, cell.task, cell.reservoir));
      if (result && config.emit_predictions) predictions += prediction_rows(rec, *result);
      if (!result) ++report.failed;
      report.records.push_back(std::move(rec));
    }
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<TaskResult> result;
    std::string error;
    RealMatrix features;
    TimeSeries input;
    std::vector<std::string> labels;
    try {
      const ReservoirParams params = sample_parameters(config.reservoir);
      labels = params.observable_labels;
      input = make_input(config.task.input);
      const ReservoirFeatureMap map(params);
      features = featurize_batch(map, input.values, config.workers);
      result = run_task_on_features(config.task, map, features, input);
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception& e) {
      error = e.what();
    }
    ResultRecord rec = record_from(hash, config.reservoir, config.task, "", std::nullopt,
                                   result ? &*result : nullptr, error, ms_since(t0));
    cells.push_back(cell_json(rec, result ? &*result : nullptr, config.task, config.reservoir));
    if (result && config.emit_predictions) predictions += prediction_rows(rec, *result);
    if (!result) ++report.failed;
    report.records.push_back(std::move(rec));

    if (config.emit_features && features.size() > 0) {
      std::string text = "index,t,x";
      for (const auto& l : labels) text += "," + l;
      text += "\n";
      for (Eigen::Index c = 0; c < features.cols(); ++c) {
        const auto i = static_cast<std::size_t>(c);
        text += std::to_string(c) + "," + fmt_double(input.times[i]) + "," + fmt_double(input.values[i]);
        for (Eigen::Index k = 0; k < features.rows(); ++k) text += "," + fmt_double(features(k, c));
        text += "\n";
      }
      write_text(dir / "features.csv", text);
    }
  }

  std::string csv = results_csv_header() + "\n";
  for (const auto& rec : report.records) csv += format_record(rec) + "\n";
  report.results_csv = dir / "results.csv";
  write_text(report.results_csv, csv);

  const json sidecar{{"version", library_version()},
                     {"config_hash", hash},
                     {"config", to_json(config)},
                     {"workers", resolve_workers(config.workers)},
                     {"cells", cells}};
  write_text(dir / "results.json", sidecar.dump(2) + "\n");
  if (config.emit_predictions) write_text(dir / "predictions.csv", predictions);
  return report;
}

}  // namespace qrc
