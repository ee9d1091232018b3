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

#include "qrc/reservoir.hpp"

#include <cmath>
#include <random>

#include "qrc/errors.hpp"
#include "qrc/parallel.hpp"
#include "qrc/propagation.hpp"

namespace qrc {

std::string_view to_string(ObservableSet v) {
  switch (v) {
    case ObservableSet::z_only: return "z_only";
    case ObservableSet::xyz: return "xyz";
    case ObservableSet::xyz_plus_zz: return "xyz_plus_zz";
  }
  return "?";
}

std::string_view to_string(InitialStateMode v) {
  return v == InitialStateMode::haar_random ? "haar_random" : "all_ground";
}

std::string_view to_string(DissipationMode v) { return v == DissipationMode::projector ? "projector" : "lowering"; }

std::string_view to_string(DensityPropagator v) { return v == DensityPropagator::chebyshev ? "chebyshev" : "dense"; }

void ReservoirConfig::validate() const {
  if (n_qubits < 1) throw ArgumentError("reservoir: n_qubits must be >= 1");
  if (n_qubits > kMaxDenseQubits) {
    throw ResourceError("reservoir: n_qubits = " + std::to_string(n_qubits) +
                        " exceeds the dense propagator limit of " + std::to_string(kMaxDenseQubits) +
                        " qubits (the 4^N Liouvillian would not fit)");
  }
  for (double v : {delta0, omega0, v0, heterogeneity, gamma, tau, scale_s, unitary_threshold}) {
    if (!std::isfinite(v)) throw ArgumentError("reservoir: parameters must be finite");
  }
  if (!(tau > 0.0)) throw ArgumentError("reservoir: tau must be > 0");
  if (heterogeneity < 0.0) throw ArgumentError("reservoir: heterogeneity must be >= 0");
  if (gamma < 0.0) throw ArgumentError("reservoir: gamma must be >= 0");
}

namespace {

std::vector<ComplexMatrix> build_observables(ObservableSet set, int n, std::vector<std::string>& labels) {
  std::vector<ComplexMatrix> out;
  auto add = [&](ComplexMatrix m, std::string label) {
    out.push_back(std::move(m));
    labels.push_back(std::move(label));
  };
  if (set == ObservableSet::z_only) {
    for (int j = 0; j < n; ++j) add(site_operator(SiteOp::sigma_z, j, n), "Z" + std::to_string(j));
    return out;
  }
  for (int j = 0; j < n; ++j) {
    add(site_operator(SiteOp::sigma_x, j, n), "X" + std::to_string(j));
    add(site_operator(SiteOp::sigma_y, j, n), "Y" + std::to_string(j));
    add(site_operator(SiteOp::sigma_z, j, n), "Z" + std::to_string(j));
  }
  if (set == ObservableSet::xyz_plus_zz) {
    for (int m = 0; m < n; ++m) {
      for (int k = m + 1; k < n; ++k) {
        add(site_operator(SiteOp::sigma_z, m, n) * site_operator(SiteOp::sigma_z, k, n),
            "Z" + std::to_string(m) + "Z" + std::to_string(k));
      }
    }
  }
  return out;
}

}  // namespace

ReservoirParams sample_parameters(const ReservoirConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](double mean) { return mean * (1.0 + config.heterogeneity * normal(rng)); };

  ReservoirParams p;
  p.config = config;
  p.detunings.resize(n);
  p.rabi.resize(n);
  p.couplings = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) p.detunings[j] = draw(config.delta0);
  for (int j = 0; j < n; ++j) p.rabi[j] = draw(config.omega0);
  for (int m = 0; m < n; ++m) {
    for (int k = m + 1; k < n; ++k) {
      p.couplings(m, k) = draw(config.v0);
      p.couplings(k, m) = p.couplings(m, k);
    }
  }

  const Eigen::Index dim = Eigen::Index{1} << n;
  if (config.initial_state == InitialStateMode::haar_random) {
    // Normalized complex Gaussian vector = Haar-distributed pure state.
    ComplexVector psi(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double re = normal(rng);
      const double im = normal(rng);
      psi[b] = Complex(re, im);
    }
    psi /= psi.norm();
    p.initial_state = QuantumState::pure(std::move(psi));
  } else {
    p.initial_state = QuantumState::ground(n);
  }

  p.observables = build_observables(config.observables, n, p.observable_labels);

  for (int j = 0; j < n; ++j) {
    if (config.dissipation == DissipationMode::projector) {
      p.jump_ops.push_back(config.gamma * site_operator(SiteOp::s_down, j, n));
    } else {
      p.jump_ops.push_back(std::sqrt(config.gamma) * site_operator(SiteOp::lowering, j, n));
    }
  }
  return p;
}

ComplexMatrix build_hamiltonian(const ReservoirParams& params, double x) {
  return driven_ising_hamiltonian(params.detunings, params.rabi, params.couplings, params.config.scale_s, x);
}

ComplexMatrix drive_operator(const ReservoirParams& params) {
  const int n = params.config.n_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix hx = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) hx -= params.config.scale_s * site_operator(SiteOp::s_down, j, n);
  return hx;
}

RealVector featurize(const ReservoirParams& params, double x) {
  if (!std::isfinite(x)) throw ValidationError("featurize: input is not finite");
  const ComplexMatrix h = build_hamiltonian(params, x);
  const ReservoirConfig& cfg = params.config;
  if (cfg.gamma < cfg.unitary_threshold) {
    return expectation_values(unitary_evolve(params.initial_state, h, cfg.tau), params.observables);
  }
  if (cfg.propagator == DensityPropagator::dense) {
    const Liouvillian gen = lindblad_generator(h, params.jump_ops);
    return expectation_values(dissipative_evolve(QuantumState::projector(params.initial_state), gen, cfg.tau),
                              params.observables);
  }
  return expectation_values(propagate_density(params.initial_state, h, params.jump_ops, cfg.tau), params.observables);
}

RealMatrix featurize_batch(const FeatureMap& map, std::span<const double> xs, unsigned workers) {
  RealMatrix out(map.dim(), static_cast<Eigen::Index>(xs.size()));
  parallel_for(xs.size(), resolve_workers(workers), [&](std::size_t t) {
    const RealVector col = map(xs[t]);
    if (col.size() != out.rows()) {
      throw ArgumentError("featurize_batch: feature map returned a vector of the wrong length");
    }
    out.col(static_cast<Eigen::Index>(t)) = col;
  });
  return out;
}

RealMatrix featurize_batch(const ReservoirParams& params, std::span<const double> xs, unsigned workers) {
  return featurize_batch(ReservoirFeatureMap(params), xs, workers);
}

}  // namespace qrc
