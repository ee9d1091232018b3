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

#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/quantum_ops.hpp"

namespace qrc {

enum class ObservableSet { z_only, xyz, xyz_plus_zz };
enum class InitialStateMode { haar_random, all_ground };
enum class DissipationMode { projector, lowering };
enum class DensityPropagator { chebyshev, dense };

std::string_view to_string(ObservableSet v);
std::string_view to_string(InitialStateMode v);
std::string_view to_string(DissipationMode v);
std::string_view to_string(DensityPropagator v);

// Frozen physical configuration. Defaults: N = 5, Delta0 = 5, Omega0 = 2,
// tau = 1.5 pi / Omega0, gamma = 1.5e-2, 10 % heterogeneity, V0 = Omega0.
struct ReservoirConfig {
  int n_qubits = 5;
  double delta0 = 5.0;
  double omega0 = 2.0;
  double v0 = 2.0;
  double heterogeneity = 0.10;
  double gamma = 1.5e-2;
  double tau = 1.5 * std::numbers::pi / 2.0;
  double scale_s = 0.8;
  ObservableSet observables = ObservableSet::z_only;
  InitialStateMode initial_state = InitialStateMode::haar_random;
  DissipationMode dissipation = DissipationMode::projector;
  std::uint64_t seed = 1;
  // gamma below this takes the pure-state path.
  double unitary_threshold = 1e-10;
  DensityPropagator propagator = DensityPropagator::chebyshev;

  // ArgumentError on invalid values; ResourceError for n_qubits beyond
  // kMaxDenseQubits.
  void validate() const;

  bool operator==(const ReservoirConfig&) const = default;
};

struct ReservoirParams {
  ReservoirConfig config;
  RealVector detunings;  // Delta_j^0
  RealVector rabi;       // Omega_j
  RealMatrix couplings;  // symmetric, zero diagonal
  QuantumState initial_state = QuantumState::ground(1);
  std::vector<ComplexMatrix> observables;
  std::vector<std::string> observable_labels;
  std::vector<ComplexMatrix> jump_ops;

  Eigen::Index feature_dim() const { return static_cast<Eigen::Index>(observables.size()); }
};

/// Draws a reservoir from `config`.
///
/// A std::mt19937_64 seeded with config.seed feeds standard normals z in this
/// fixed order: detunings (site 0..N-1), Rabi frequencies (site 0..N-1),
/// couplings V_mn (m < n, row-major), then for haar_random 2 * 2^N values
/// (real, imaginary) of the initial amplitudes. Each parameter is
/// mean * (1 + heterogeneity * z), so heterogeneity = 0 reproduces the means
/// exactly while keeping the stream position fixed.
ReservoirParams sample_parameters(const ReservoirConfig& config);

// H(x) with detunings shifted by scale_s * x.
ComplexMatrix build_hamiltonian(const ReservoirParams& params, double x);

// dH/dx = -scale_s * sum_j Sd_j.
ComplexMatrix drive_operator(const ReservoirParams& params);

// Expectations of every observable after evolving the initial state for tau
// under H(x). Unitary path when gamma < unitary_threshold, GKSL otherwise.
// Depends only on (params, x).
RealVector featurize(const ReservoirParams& params, double x);

// Scalar input -> feature vector.
class FeatureMap {
 public:
  virtual ~FeatureMap() = default;
  virtual Eigen::Index dim() const = 0;
  virtual RealVector operator()(double x) const = 0;
};

class ReservoirFeatureMap final : public FeatureMap {
 public:
  explicit ReservoirFeatureMap(const ReservoirParams& params) : params_(&params) {}
  Eigen::Index dim() const override { return params_->feature_dim(); }
  RealVector operator()(double x) const override { return featurize(*params_, x); }

 private:
  const ReservoirParams* params_;
};

// K x T matrix with column t = map(xs[t]). Columns are computed independently
// on `workers` threads (0 = resolve_workers()); the result is bitwise
// independent of the worker count.
RealMatrix featurize_batch(const FeatureMap& map, std::span<const double> xs, unsigned workers = 0);
RealMatrix featurize_batch(const ReservoirParams& params, std::span<const double> xs, unsigned workers = 0);

}  // namespace qrc
