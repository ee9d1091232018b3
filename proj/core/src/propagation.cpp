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

#include "qrc/propagation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "qrc/errors.hpp"

namespace qrc {
namespace {

using SparseComplex = Eigen::SparseMatrix<Complex>;

constexpr Complex kI{0.0, 1.0};
constexpr double kTermTol = 1e-16;

// Hermiticity-preserving GKSL action written as G X + (G X)^+ + sum L X L^+
// with G = -iH - K/2, K = sum L^+ L. Valid for Hermitian X only.
class GksAction {
 public:
  GksAction(const ComplexMatrix& h, std::span<const ComplexMatrix> jumps, double scale) {
    const Eigen::Index d = h.rows();
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    for (const auto& l : jumps) {
      k.noalias() += l.adjoint() * l;
      SparseComplex sl = l.sparseView(0.0, 0.0);
      sl.makeCompressed();
      jumps_.push_back(scale * sl);
      jumps_adj_.push_back(SparseComplex(sl.adjoint()));
    }
    g_ = scale * (-kI * h - 0.5 * k);
    tmp_.resize(d, d);
  }

  void apply(const ComplexMatrix& x, ComplexMatrix& out) {
    tmp_.noalias() = g_ * x;
    out = tmp_ + tmp_.adjoint();
    for (std::size_t j = 0; j < jumps_.size(); ++j) {
      tmp_.noalias() = jumps_[j] * x;
      out.noalias() += tmp_ * jumps_adj_[j];
    }
  }

 private:
  ComplexMatrix g_;
  std::vector<SparseComplex> jumps_;      // scale * L
  std::vector<SparseComplex> jumps_adj_;  // L^+
  ComplexMatrix tmp_;
};

double two_norm_bound(const ComplexMatrix& a) {
  // |A|_2 <= sqrt(|A|_1 |A|_inf)
  const double n1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const double ninf = a.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(n1 * ninf);
}

}  // namespace

QuantumState propagate_density(const QuantumState& rho0, const ComplexMatrix& hamiltonian,
                               std::span<const ComplexMatrix> jump_ops, double tau, ChebyshevStats* stats) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw ArgumentError("propagate_density: tau must be finite and >= 0");
  }
  const Eigen::Index d = hamiltonian.rows();
  if (hamiltonian.cols() != d || rho0.dim() != d) {
    throw ArgumentError("propagate_density: state and Hamiltonian dimensions differ");
  }
  if (!is_hermitian(hamiltonian, 1e-10 * std::max(1.0, hamiltonian.cwiseAbs().maxCoeff()))) {
    throw ValidationError("propagate_density: Hamiltonian is not Hermitian");
  }
  for (const auto& l : jump_ops) {
    if (l.rows() != d || l.cols() != d) {
      throw ArgumentError("propagate_density: jump operator dimension does not match the Hamiltonian");
    }
  }

  ComplexMatrix rho = rho0.density_matrix();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian, Eigen::EigenvaluesOnly);
  const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
  double dissipation = 0.0;
  for (const auto& l : jump_ops) {
    const double n = two_norm_bound(l);
    dissipation += 2.0 * n * n;
  }
  const double r = tau * (spread + dissipation);
  if (stats) *stats = {0, r};
  if (r == 0.0) return QuantumState::unchecked_density(std::move(rho));

  GksAction action(hamiltonian, jump_ops, tau / r);

  const int max_terms = static_cast<int>(std::ceil(2.0 * r)) + 200;
  ComplexMatrix prev = rho;
  ComplexMatrix cur(d, d);
  ComplexMatrix next(d, d);
  action.apply(prev, cur);

  ComplexMatrix result = std::cyl_bessel_j(0.0, r) * prev + 2.0 * std::cyl_bessel_j(1.0, r) * cur;
  int small_run = 0;
  int k = 1;
  bool converged = false;
  while (k < max_terms) {
    action.apply(cur, next);
    next *= 2.0;
    next += prev;
    ++k;
    const double coeff = 2.0 * std::cyl_bessel_j(static_cast<double>(k), r);
    result.noalias() += coeff * next;
    const double contribution = std::abs(coeff) * next.norm();
    if (k > r && contribution < kTermTol) {
      if (++small_run >= 3) {
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  if (stats) stats->terms = k;
  if (!converged) {
    throw NumericalIntegrityError("propagate_density: Chebyshev series did not converge in " +
                                  std::to_string(max_terms) + " terms");
  }
  check_density(result, 1e-9, 1e-9, -1e-8);
  return QuantumState::unchecked_density(std::move(result));
}

}  // namespace qrc
