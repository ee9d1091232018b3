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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qrc/errors.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {
namespace {

ReservoirConfig small_config(int n = 3) {
  ReservoirConfig c;
  c.n_qubits = n;
  return c;
}

TEST(ReservoirConfig, Validation) {
  ReservoirConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_qubits = 0;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ReservoirConfig{};
  c.tau = 0.0;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ReservoirConfig{};
  c.heterogeneity = -0.1;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ReservoirConfig{};
  c.gamma = -1e-3;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ReservoirConfig{};
  c.n_qubits = 7;
  EXPECT_THROW(c.validate(), ResourceError);
  EXPECT_THROW(sample_parameters(c), ResourceError);
}

TEST(SampleParameters, ZeroHeterogeneityGivesMeans) {
  ReservoirConfig c = small_config(4);
  c.heterogeneity = 0.0;
  const ReservoirParams p = sample_parameters(c);
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(p.detunings[j], c.delta0);
    EXPECT_EQ(p.rabi[j], c.omega0);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(p.couplings(j, k), j == k ? 0.0 : c.v0);
  }
}

TEST(SampleParameters, DeterministicUnderSeed) {
  const ReservoirParams a = sample_parameters(small_config());
  const ReservoirParams b = sample_parameters(small_config());
  EXPECT_EQ(a.detunings, b.detunings);
  EXPECT_EQ(a.rabi, b.rabi);
  EXPECT_EQ(a.couplings, b.couplings);
  EXPECT_EQ(a.initial_state.vector(), b.initial_state.vector());

  ReservoirConfig other = small_config();
  other.seed = 2;
  EXPECT_NE(sample_parameters(other).detunings, a.detunings);
}

TEST(SampleParameters, ShapesAndSymmetry) {
  const ReservoirParams p = sample_parameters(small_config(4));
  EXPECT_EQ(p.detunings.size(), 4);
  EXPECT_EQ(p.couplings, p.couplings.transpose());
  EXPECT_EQ(p.couplings.diagonal(), RealVector::Zero(4));
  EXPECT_NEAR(p.initial_state.vector().norm(), 1.0, 1e-12);
  EXPECT_EQ(p.feature_dim(), 4);
  EXPECT_EQ(p.jump_ops.size(), 4u);

  ReservoirConfig c = small_config(3);
  c.observables = ObservableSet::xyz;
  EXPECT_EQ(sample_parameters(c).feature_dim(), 9);
  c.observables = ObservableSet::xyz_plus_zz;
  const ReservoirParams q = sample_parameters(c);
  EXPECT_EQ(q.feature_dim(), 12);
  EXPECT_EQ(q.observable_labels.back(), "Z1Z2");
  c.initial_state = InitialStateMode::all_ground;
  EXPECT_EQ(sample_parameters(c).initial_state.vector()[0], Complex(1.0, 0.0));
}

TEST(SampleParameters, DetuningDistribution) {
  // 2500 seeds x 4 sites = 1e4 samples of Normal(5, 0.5).
  std::vector<double> xs;
  ReservoirConfig c = small_config(4);
  for (std::uint64_t seed = 1; seed <= 2500; ++seed) {
    c.seed = seed;
    const ReservoirParams p = sample_parameters(c);
    for (int j = 0; j < 4; ++j) xs.push_back(p.detunings[j]);
  }
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / (xs.size() - 1));
  EXPECT_NEAR(mean, 5.0, 0.02);
  EXPECT_NEAR(sd, 0.5, 0.02);
}

TEST(Featurize, GeneralizedRabiOracle) {
  // N = 1, zero base detuning, s = 1, psi0 = |0>:
  // <Z> = 1 - 2 (Omega^2 / Omega_R^2) sin^2(Omega_R tau / 2), Omega_R^2 = Omega^2 + x^2.
  ReservoirConfig c;
  c.n_qubits = 1;
  c.delta0 = 0.0;
  c.heterogeneity = 0.0;
  c.gamma = 0.0;
  c.scale_s = 1.0;
  c.initial_state = InitialStateMode::all_ground;
  const ReservoirParams p = sample_parameters(c);
  const double omega = c.omega0;
  for (double x : {-2.0, -0.4, 0.0, 0.3, 1.0, 3.7}) {
    const double wr2 = omega * omega + x * x;
    const double s = std::sin(std::sqrt(wr2) * c.tau / 2.0);
    EXPECT_NEAR(featurize(p, x)[0], 1.0 - 2.0 * omega * omega / wr2 * s * s, 1e-8) << "x=" << x;
  }
}

TEST(Featurize, NoEvolutionLimit) {
  ReservoirConfig c = small_config();
  c.tau = 1e-12;
  const ReservoirParams p = sample_parameters(c);
  const RealVector initial = expectation_values(p.initial_state, p.observables);
  for (double x : {-3.0, 0.0, 2.0}) EXPECT_LT((featurize(p, x) - initial).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Featurize, IsPure) {
  const ReservoirParams p = sample_parameters(small_config());
  EXPECT_EQ(featurize(p, 0.3), featurize(p, 0.3));
  EXPECT_THROW(featurize(p, std::nan("")), ValidationError);
}

TEST(Featurize, PauliBound) {
  for (auto obs : {ObservableSet::z_only, ObservableSet::xyz}) {
    ReservoirConfig c = small_config();
    c.observables = obs;
    const ReservoirParams p = sample_parameters(c);
    for (double x = -4.0; x <= 4.0; x += 0.5) {
      const RealVector f = featurize(p, x);
      EXPECT_LE(f.cwiseAbs().maxCoeff(), 1.0 + 1e-9);
    }
  }
}

TEST(Featurize, Continuity) {
  const ReservoirParams p = sample_parameters(small_config());
  const double x = 0.37;
  const RealVector f0 = featurize(p, x);
  const RealVector slope_small = (featurize(p, x + 1e-6) - f0) / 1e-6;
  const RealVector slope_central = (featurize(p, x + 1e-4) - featurize(p, x - 1e-4)) / 2e-4;
  EXPECT_LT((featurize(p, x + 1e-6) - f0).cwiseAbs().maxCoeff(), 1e-4);
  for (Eigen::Index k = 0; k < f0.size(); ++k) {
    EXPECT_NEAR(slope_small[k], slope_central[k], 1e-2 * std::max(1.0, std::abs(slope_central[k])));
  }
}

TEST(Featurize, PropagatorsAgree) {
  ReservoirConfig c = small_config();
  c.observables = ObservableSet::xyz_plus_zz;
  c.gamma = 0.2;
  for (auto mode : {DissipationMode::projector, DissipationMode::lowering}) {
    c.dissipation = mode;
    c.propagator = DensityPropagator::chebyshev;
    const ReservoirParams cheb = sample_parameters(c);
    c.propagator = DensityPropagator::dense;
    const ReservoirParams dense = sample_parameters(c);
    for (double x : {-1.5, 0.2, 2.4}) {
      EXPECT_LT((featurize(cheb, x) - featurize(dense, x)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Featurize, TinyDissipationIsCloseToUnitary) {
  ReservoirConfig c = small_config();
  c.gamma = 1e-8;
  const ReservoirParams open = sample_parameters(c);
  c.gamma = 0.0;
  const ReservoirParams closed = sample_parameters(c);
  for (double x : {-2.0, 0.5}) EXPECT_LT((featurize(open, x) - featurize(closed, x)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FeaturizeBatch, EmptyBatch) {
  const ReservoirParams p = sample_parameters(small_config());
  const RealMatrix f = featurize_batch(p, std::vector<double>{});
  EXPECT_EQ(f.rows(), 3);
  EXPECT_EQ(f.cols(), 0);
}

TEST(FeaturizeBatch, DuplicatesGiveIdenticalColumns) {
  const ReservoirParams p = sample_parameters(small_config());
  const RealMatrix f = featurize_batch(p, std::vector<double>{0.4, -1.0, 0.4});
  EXPECT_EQ(f.col(0), f.col(2));
  EXPECT_EQ(f.col(0), featurize(p, 0.4));
}

TEST(FeaturizeBatch, ParallelMatchesSerialBitwise) {
  const ReservoirParams p = sample_parameters(small_config());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> xs(100);
  for (double& x : xs) x = u(rng);
  const RealMatrix serial = featurize_batch(p, xs, 1);
  const RealMatrix parallel = featurize_batch(p, xs, 4);
  EXPECT_EQ(serial, parallel);
}

TEST(FeaturizeBatch, MemorylessUnderPermutation) {
  const ReservoirParams p = sample_parameters(small_config());
  std::vector<double> xs;
  for (int i = 0; i < 30; ++i) xs.push_back(std::sin(0.7 * i) * 3.0);
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(9));
  std::vector<double> permuted;
  for (std::size_t i : perm) permuted.push_back(xs[i]);

  const RealMatrix f = featurize_batch(p, xs, 1);
  const RealMatrix g = featurize_batch(p, permuted, 1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EXPECT_EQ(g.col(static_cast<Eigen::Index>(i)), f.col(static_cast<Eigen::Index>(perm[i])));
  }
}

TEST(DriveOperator, IsDerivativeOfHamiltonian) {
  const ReservoirParams p = sample_parameters(small_config());
  const ComplexMatrix diff = build_hamiltonian(p, 1.25) - build_hamiltonian(p, 0.0);
  EXPECT_LT((diff - 1.25 * drive_operator(p)).cwiseAbs().maxCoeff(), 1e-13);
}

}  // namespace
}  // namespace qrc
