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

#include "qrc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrc/errors.hpp"

namespace qrc {
namespace {

void require_square_pair(const ComplexMatrix& h0, const ComplexMatrix& hx, const char* who) {
  if (h0.rows() != h0.cols() || hx.rows() != hx.cols() || h0.rows() != hx.rows() || h0.rows() == 0) {
    throw ArgumentError(std::string(who) + ": H0 and Hx must be square and of equal size");
  }
  if (!is_hermitian(hx, 1e-10 * std::max(1.0, hx.cwiseAbs().maxCoeff()))) {
    throw ValidationError(std::string(who) + ": Hx is not Hermitian");
  }
}

SpectralData nondegenerate_spectrum(const ComplexMatrix& h0, const char* who) {
  SpectralData s = spectral_decomposition(h0);
  if (!(s.min_gap > kDegeneracyGap)) {
    throw DegeneracyError(std::string(who) + ": H0 has a spectral gap of " + std::to_string(s.min_gap));
  }
  return s;
}

}  // namespace

SpectralData spectral_decomposition(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ArgumentError("spectral_decomposition: need a square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, 1e-10 * scale)) throw ValidationError("spectral_decomposition: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalIntegrityError("spectral_decomposition: eigensolver failed");

  SpectralData out;
  out.eigenvalues = eig.eigenvalues();
  out.eigenvectors = eig.eigenvectors();
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    Eigen::Index arg = 0;
    out.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    const Complex pivot = out.eigenvectors(arg, k);
    out.eigenvectors.col(k) *= std::conj(pivot) / std::abs(pivot);
    out.eigenvectors(arg, k) = std::abs(pivot);
  }

  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < out.eigenvalues.size(); ++k) {
    out.min_gap = std::min(out.min_gap, out.eigenvalues[k] - out.eigenvalues[k - 1]);
  }

  const double residual =
      (h * out.eigenvectors - out.eigenvectors * out.eigenvalues.cast<Complex>().asDiagonal()).colwise().norm().maxCoeff();
  if (residual > 1e-10 * scale) {
    throw NumericalIntegrityError("spectral_decomposition: eigen residual " + std::to_string(residual));
  }
  return out;
}

ComplexVector state_encoding_coefficients(const ComplexMatrix& h0, const ComplexMatrix& hx, double x, double tau,
                                          const ComplexVector& c0) {
  require_square_pair(h0, hx, "state_encoding_coefficients");
  if (c0.size() != h0.rows()) throw ArgumentError("state_encoding_coefficients: c0 has the wrong dimension");
  if (std::abs(c0.norm() - 1.0) > 1e-10) throw ValidationError("state_encoding_coefficients: c0 is not normalized");
  const SpectralData s0 = nondegenerate_spectrum(h0, "state_encoding_coefficients");
  const SpectralData sx = spectral_decomposition(h0 + x * hx);

  // overlap(j, k) = <j0|k_x>
  const ComplexMatrix overlap = s0.eigenvectors.adjoint() * sx.eigenvectors;
  // a_k = sum_l <k_x|l0> c0_l
  ComplexVector a = overlap.adjoint() * c0;
  for (Eigen::Index k = 0; k < a.size(); ++k) a[k] *= std::exp(Complex(0.0, -tau * sx.eigenvalues[k]));
  ComplexVector c = overlap * a;
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::exp(Complex(0.0, tau * s0.eigenvalues[j]));
  return c;
}

FirstOrderEstimates perturbation_first_order(const ComplexMatrix& h0, const ComplexMatrix& hx, double x) {
  require_square_pair(h0, hx, "perturbation_first_order");
  const SpectralData s0 = nondegenerate_spectrum(h0, "perturbation_first_order");
  const ComplexMatrix m = s0.eigenvectors.adjoint() * hx * s0.eigenvectors;  // <k0|Hx|j0>
  const Eigen::Index d = m.rows();

  FirstOrderEstimates out;
  out.eigenvalues = s0.eigenvalues + x * m.diagonal().real();
  out.overlaps = ComplexMatrix::Identity(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j != k) out.overlaps(k, j) = x * m(k, j) / (s0.eigenvalues[k] - s0.eigenvalues[j]);
    }
  }
  return out;
}

double verify_encoding_equivalence(const ReservoirParams& params, std::span<const double> xs) {
  if (params.config.gamma > 0.0) {
    throw UnsupportedModeError("verify_encoding_equivalence: defined for unitary evolution only (gamma = 0)");
  }
  if (!params.initial_state.is_pure()) {
    throw UnsupportedModeError("verify_encoding_equivalence: needs a pure initial state");
  }
  const double tau = params.config.tau;
  const ComplexMatrix h0 = build_hamiltonian(params, 0.0);
  const ComplexMatrix hx = drive_operator(params);
  const SpectralData s0 = nondegenerate_spectrum(h0, "verify_encoding_equivalence");
  const ComplexVector& psi0 = params.initial_state.vector();
  const ComplexVector c0 = s0.eigenvectors.adjoint() * psi0;

  double worst = 0.0;
  for (double x : xs) {
    const ComplexVector c = state_encoding_coefficients(h0, hx, x, tau, c0);
    ComplexVector phased = c;
    for (Eigen::Index j = 0; j < c.size(); ++j) phased[j] *= std::exp(Complex(0.0, -tau * s0.eigenvalues[j]));
    const ComplexVector reconstructed = s0.eigenvectors * phased;
    const ComplexVector exact = unitary_evolve(params.initial_state, h0 + x * hx, tau).vector();
    worst = std::max(worst, (reconstructed - exact).norm());
  }
  return worst;
}

}  // namespace qrc
