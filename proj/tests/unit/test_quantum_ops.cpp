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


#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qrc/errors.hpp"
#include "qrc/propagation.hpp"
#include "qrc/quantum_ops.hpp"
#include "test_support.hpp"

namespace qrc {
namespace {

using testing::max_abs;
using testing::random_density;
using testing::random_hermitian;
using testing::random_state;

TEST(SiteOperator, OrderingPutsSiteZeroLeftmost) {
  const ComplexMatrix z0 = site_operator(SiteOp::sigma_z, 0, 2);
  const ComplexMatrix z1 = site_operator(SiteOp::sigma_z, 1, 2);
  EXPECT_EQ(z0.diagonal().real(), Eigen::Vector4d(1, 1, -1, -1));
  EXPECT_EQ(z1.diagonal().real(), Eigen::Vector4d(1, -1, 1, -1));
}

TEST(SiteOperator, MatchesExplicitKroneckerProducts) {
  ComplexMatrix x(2, 2), id = ComplexMatrix::Identity(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_LT(max_abs(site_operator(SiteOp::sigma_x, 1, 3) - kron(kron(id, x), id)), 1e-15);
  ComplexMatrix sm(2, 2);
  sm << 0, 1, 0, 0;
  EXPECT_LT(max_abs(site_operator(SiteOp::lowering, 2, 3) - kron(kron(id, id), sm)), 1e-15);
}

TEST(SiteOperator, PauliAlgebra) {
  const Complex i(0.0, 1.0);
  for (int site = 0; site < 3; ++site) {
    const ComplexMatrix x = site_operator(SiteOp::sigma_x, site, 3);
    const ComplexMatrix y = site_operator(SiteOp::sigma_y, site, 3);
    const ComplexMatrix z = site_operator(SiteOp::sigma_z, site, 3);
    const ComplexMatrix sd = site_operator(SiteOp::s_down, site, 3);
    EXPECT_LT(max_abs(x * y - i * z), 1e-15);
    EXPECT_LT(max_abs(x * x - ComplexMatrix::Identity(8, 8)), 1e-15);
    EXPECT_LT(max_abs(sd - 0.5 * (ComplexMatrix::Identity(8, 8) - z)), 1e-15);
    EXPECT_LT(max_abs(sd * sd - sd), 1e-15);
  }
}

TEST(SiteOperator, RejectsOutOfRangeSite) {
  EXPECT_THROW(site_operator(SiteOp::sigma_x, 3, 3), ArgumentError);
  EXPECT_THROW(site_operator(SiteOp::sigma_x, -1, 3), ArgumentError);
}

TEST(Hamiltonian, SingleQubitClosedForm) {
  RealVector d(1), w(1);
  d << 0.7;
  w << 1.3;
  const ComplexMatrix h = driven_ising_hamiltonian(d, w, RealMatrix::Zero(1, 1), 0.5, 2.0);
  ComplexMatrix expected(2, 2);
  expected << 0.0, 0.65, 0.65, -(0.7 + 0.5 * 2.0);
  EXPECT_LT(max_abs(h - expected), 1e-15);
}

TEST(Hamiltonian, TwoQubitInteractionOnDoublyExcitedState) {
  RealVector d(2), w = RealVector::Zero(2);
  d << 1.0, 2.0;
  RealMatrix v = RealMatrix::Zero(2, 2);
  v(0, 1) = v(1, 0) = 3.0;
  const ComplexMatrix h = driven_ising_hamiltonian(d, w, v, 1.0, 0.5);
  // |11> is index 3: -(1.5) - (2.5) + 3 / (N - 1)
  EXPECT_NEAR(h(3, 3).real(), -1.5 - 2.5 + 3.0, 1e-15);
  EXPECT_NEAR(h(1, 1).real(), -2.5, 1e-15);
  EXPECT_NEAR(h(0, 0).real(), 0.0, 1e-15);
}

TEST(Hamiltonian, IsHermitian) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int n = 1; n <= 4; ++n) {
    RealVector d(n), w(n);
    RealMatrix v = RealMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      d[j] = z(rng);
      w[j] = z(rng);
      for (int k = j + 1; k < n; ++k) v(j, k) = v(k, j) = z(rng);
    }
    EXPECT_TRUE(is_hermitian(driven_ising_hamiltonian(d, w, v, 0.8, z(rng))));
  }
}

TEST(QuantumState, ValidatesInputs) {
  EXPECT_THROW(QuantumState::pure(ComplexVector::Ones(2)), ValidationError);
  ComplexMatrix not_unit_trace = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(QuantumState::density(not_unit_trace), ValidationError);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(QuantumState::density(negative), ValidationError);
  ComplexMatrix non_hermitian(2, 2);
  non_hermitian << 0.5, 0.3, 0.0, 0.5;
  EXPECT_THROW(QuantumState::density(non_hermitian), ValidationError);
  const QuantumState g = QuantumState::ground(3);
  EXPECT_EQ(g.dim(), 8);
  EXPECT_EQ(g.vector()[0], Complex(1.0, 0.0));
}

TEST(UnitaryEvolve, RabiOscillation) {
  // H = (Omega/2) X, psi0 = |0>  =>  <Z>(tau) = cos(Omega tau)
  const double omega = 1.7;
  const ComplexMatrix h = 0.5 * omega * site_operator(SiteOp::sigma_x, 0, 1);
  const std::vector<ComplexMatrix> z{site_operator(SiteOp::sigma_z, 0, 1)};
  for (double tau : {0.0, 0.3, 1.0, 2.5, 7.9}) {
    const QuantumState psi = unitary_evolve(QuantumState::ground(1), h, tau);
    EXPECT_NEAR(expectation_values(psi, z)[0], std::cos(omega * tau), 1e-12) << "tau=" << tau;
  }
}

TEST(UnitaryEvolve, RejectsNonHermitianAndMixedInputs) {
  ComplexMatrix h(2, 2);
  h << 0, 1, 0, 0;
  EXPECT_THROW(unitary_evolve(QuantumState::ground(1), h, 1.0), ValidationError);
  const QuantumState rho = QuantumState::projector(QuantumState::ground(1));
  EXPECT_THROW(unitary_evolve(rho, ComplexMatrix::Zero(2, 2), 1.0), ValidationError);
}

TEST(UnitaryEvolve, ComposesAndPreservesNorm) {
  std::mt19937_64 rng(11);
  const ComplexMatrix h = random_hermitian(8, rng);
  const QuantumState psi0 = QuantumState::pure(random_state(8, rng));
  const QuantumState a = unitary_evolve(unitary_evolve(psi0, h, 0.4), h, 0.9);
  const QuantumState b = unitary_evolve(psi0, h, 1.3);
  EXPECT_LT((a.vector() - b.vector()).norm(), 1e-12);
  EXPECT_NEAR(b.vector().norm(), 1.0, 1e-12);
}

TEST(Dissipative, PureDephasingDecay) {
  // L = gamma Sd, H = 0, rho0 = |+><+|  =>  <X>(t) = exp(-gamma^2 t / 2)
  const double gamma = 0.6;
  ComplexVector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const QuantumState rho0 = QuantumState::projector(QuantumState::pure(plus));
  const std::vector<ComplexMatrix> jumps{gamma * site_operator(SiteOp::s_down, 0, 1)};
  const std::vector<ComplexMatrix> x{site_operator(SiteOp::sigma_x, 0, 1)};
  const ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  const Liouvillian gen = lindblad_generator(h, jumps);
  for (double t : {0.1, 1.0, 4.0, 12.0}) {
    const double expected = std::exp(-gamma * gamma * t / 2.0);
    EXPECT_NEAR(expectation_values(dissipative_evolve(rho0, gen, t), x)[0], expected, 1e-10) << "t=" << t;
    EXPECT_NEAR(expectation_values(propagate_density(rho0, h, jumps, t), x)[0], expected, 1e-10) << "t=" << t;
  }
}

TEST(Dissipative, AmplitudeDampingPopulation) {
  // L = sqrt(g) |0><1|, rho0 = |1><1|  =>  P(1)(t) = exp(-g t)
  const double g = 0.3;
  const std::vector<ComplexMatrix> jumps{std::sqrt(g) * site_operator(SiteOp::lowering, 0, 1)};
  ComplexVector one(2);
  one << 0, 1;
  const QuantumState rho0 = QuantumState::projector(QuantumState::pure(one));
  const std::vector<ComplexMatrix> sd{site_operator(SiteOp::s_down, 0, 1)};
  const ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  const Liouvillian gen = lindblad_generator(h, jumps);
  for (double t : {0.5, 2.0, 6.0}) {
    EXPECT_NEAR(expectation_values(dissipative_evolve(rho0, gen, t), sd)[0], std::exp(-g * t), 1e-10);
    EXPECT_NEAR(expectation_values(propagate_density(rho0, h, jumps, t), sd)[0], std::exp(-g * t), 1e-10);
  }
}

TEST(Dissipative, ZeroDissipationMatchesUnitary) {
  std::mt19937_64 rng(20260);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const ComplexMatrix h = random_hermitian(dim, rng, 2.0);
    const QuantumState psi0 = QuantumState::pure(random_state(dim, rng));
    std::vector<ComplexMatrix> jumps;
    for (int j = 0; j < n; ++j) jumps.push_back(0.0 * site_operator(SiteOp::s_down, j, n));
    const double tau = 1.5 * std::numbers::pi / 2.0;

    const ComplexVector psi = unitary_evolve(psi0, h, tau).vector();
    const ComplexMatrix expected = psi * psi.adjoint();
    const QuantumState rho0 = QuantumState::projector(psi0);
    EXPECT_LT(max_abs(dissipative_evolve(rho0, lindblad_generator(h, jumps), tau).matrix() - expected), 1e-9)
        << "trial " << trial;
    EXPECT_LT(max_abs(propagate_density(rho0, h, jumps, tau).matrix() - expected), 1e-9) << "trial " << trial;
  }
}

TEST(Dissipative, MatchesRungeKuttaReference) {
  // Two-qubit reservoir-like instance at gamma = 1.5e-2.
  RealVector d(2), w(2);
  d << 5.2, 4.7;
  w << 1.9, 2.2;
  RealMatrix v = RealMatrix::Zero(2, 2);
  v(0, 1) = v(1, 0) = 2.1;
  const ComplexMatrix h = driven_ising_hamiltonian(d, w, v, 0.8, 0.37);
  const double gamma = 1.5e-2;
  const std::vector<ComplexMatrix> jumps{gamma * site_operator(SiteOp::s_down, 0, 2),
                                         gamma * site_operator(SiteOp::s_down, 1, 2)};
  std::mt19937_64 rng(5);
  const QuantumState rho0 = QuantumState::projector(QuantumState::pure(random_state(4, rng)));
  const double tau = 1.5 * std::numbers::pi / 2.0;

  const ComplexMatrix reference = testing::rk4_evolve(h, jumps, rho0.matrix(), tau, 10000);
  EXPECT_LT(max_abs(dissipative_evolve(rho0, lindblad_generator(h, jumps), tau).matrix() - reference), 1e-7);
  EXPECT_LT(max_abs(propagate_density(rho0, h, jumps, tau).matrix() - reference), 1e-7);
}

TEST(Dissipative, PreservesTraceHermiticityPositivity) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix h = random_hermitian(8, rng, 3.0);
    std::vector<ComplexMatrix> jumps;
    for (int j = 0; j < 3; ++j) {
      jumps.push_back(0.7 * site_operator(SiteOp::s_down, j, 3));
      jumps.push_back(0.4 * site_operator(SiteOp::lowering, j, 3));
    }
    const QuantumState rho0 = QuantumState::density(random_density(8, rng));
    for (const QuantumState& out : {dissipative_evolve(rho0, lindblad_generator(h, jumps), 2.0),
                                    propagate_density(rho0, h, jumps, 2.0)}) {
      const ComplexMatrix& rho = out.matrix();
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
      EXPECT_NEAR(rho.trace().imag(), 0.0, 1e-12);
      EXPECT_LT(max_abs(rho - rho.adjoint()), 1e-12);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho);
      EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(Dissipative, SemigroupComposition) {
  std::mt19937_64 rng(7);
  const ComplexMatrix h = random_hermitian(4, rng);
  const std::vector<ComplexMatrix> jumps{0.5 * site_operator(SiteOp::s_down, 0, 2),
                                         0.3 * site_operator(SiteOp::lowering, 1, 2)};
  const Liouvillian gen = lindblad_generator(h, jumps);
  const QuantumState rho0 = QuantumState::density(random_density(4, rng));
  const QuantumState split = dissipative_evolve(dissipative_evolve(rho0, gen, 0.7), gen, 1.1);
  const QuantumState whole = dissipative_evolve(rho0, gen, 1.8);
  EXPECT_LT(max_abs(split.matrix() - whole.matrix()), 1e-10);
  const QuantumState cheb = propagate_density(propagate_density(rho0, h, jumps, 0.7), h, jumps, 1.1);
  EXPECT_LT(max_abs(cheb.matrix() - whole.matrix()), 1e-10);
}

TEST(Dissipative, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(8);
  const ComplexMatrix h = random_hermitian(4, rng);
  const std::vector<ComplexMatrix> jumps{0.5 * site_operator(SiteOp::s_down, 0, 2)};
  const QuantumState rho0 = QuantumState::density(random_density(4, rng));
  EXPECT_LT(max_abs(dissipative_evolve(rho0, lindblad_generator(h, jumps), 0.0).matrix() - rho0.matrix()), 1e-14);
  EXPECT_LT(max_abs(propagate_density(rho0, h, jumps, 0.0).matrix() - rho0.matrix()), 1e-14);
}

TEST(Dissipative, ErrorPaths) {
  const ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  const std::vector<ComplexMatrix> jumps{site_operator(SiteOp::s_down, 0, 1)};
  const QuantumState rho0 = QuantumState::projector(QuantumState::ground(1));
  EXPECT_THROW(dissipative_evolve(rho0, lindblad_generator(h, jumps), -1.0), ArgumentError);
  EXPECT_THROW(propagate_density(rho0, h, jumps, -1.0), ArgumentError);

  const std::vector<ComplexMatrix> wrong{site_operator(SiteOp::s_down, 0, 2)};
  EXPECT_THROW(lindblad_generator(h, wrong), ArgumentError);

  const ComplexMatrix big = ComplexMatrix::Zero(128, 128);
  EXPECT_THROW(lindblad_generator(big, {}), ResourceError);
}

TEST(Dissipative, ChebyshevTermCountTracksSpectralWidth) {
  std::mt19937_64 rng(4);
  const ComplexMatrix h = random_hermitian(8, rng, 5.0);
  const std::vector<ComplexMatrix> jumps{0.1 * site_operator(SiteOp::s_down, 0, 3)};
  const QuantumState rho0 = QuantumState::density(random_density(8, rng));
  ChebyshevStats stats;
  propagate_density(rho0, h, jumps, 2.0, &stats);
  EXPECT_GT(stats.half_width, 0.0);
  EXPECT_GE(stats.terms, static_cast<int>(stats.half_width));
  EXPECT_LE(stats.terms, static_cast<int>(2 * stats.half_width) + 200);
}

TEST(Expectation, RejectsNonHermitianObservable) {
  ComplexVector plus(2);
  plus << 1.0 / std::numbers::sqrt2, Complex(0.0, 1.0 / std::numbers::sqrt2);
  const std::vector<ComplexMatrix> lowering{site_operator(SiteOp::lowering, 0, 1)};
  EXPECT_THROW(expectation_values(QuantumState::pure(plus), lowering), NumericalIntegrityError);
}

TEST(Expectation, PureAndDensityAgree) {
  std::mt19937_64 rng(12);
  const QuantumState psi = QuantumState::pure(random_state(8, rng));
  std::vector<ComplexMatrix> obs;
  for (int j = 0; j < 3; ++j) obs.push_back(site_operator(SiteOp::sigma_y, j, 3));
  const RealVector a = expectation_values(psi, obs);
  const RealVector b = expectation_values(QuantumState::projector(psi), obs);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace qrc
