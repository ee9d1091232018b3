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

// Relation between Hamiltonian encoding, H(x) = H0 + x Hx acting on a fixed
// state, and an equivalent state encoding in the eigenbasis of H0.

#include <span>

#include "qrc/quantum_ops.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

// Spectral gaps at or below this are treated as degenerate.
inline constexpr double kDegeneracyGap = 1e-8;

struct SpectralData {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns; largest-magnitude entry real positive
  double min_gap = 0.0;        // +inf for a 1x1 matrix
};

// Hermitian eigendecomposition with the phase gauge above. Throws
// ValidationError for non-Hermitian input and NumericalIntegrityError when a
// residual |H v - E v| exceeds 1e-10 * max(1, |H|).
SpectralData spectral_decomposition(const ComplexMatrix& h);

// Coefficients c_j(x) such that
//   exp(-i tau (H0 + x Hx)) sum_j c0_j |j0> = sum_j c_j(x) exp(-i tau E0_j) |j0>,
// i.e.
//   c_j(x) = sum_{k,l} c0_l exp(-i tau (E^x_k - E0_j)) <j0|k_x> <k_x|l0>.
// The sum over l runs over the initial amplitudes and k over eigenstates of
// H(x); this is the index assignment for which the identity above holds.
// Throws DegeneracyError when H0 has a gap <= kDegeneracyGap.
ComplexVector state_encoding_coefficients(const ComplexMatrix& h0, const ComplexMatrix& hx, double x, double tau,
                                          const ComplexVector& c0);

struct FirstOrderEstimates {
  RealVector eigenvalues;  // E0_k + x <k0|Hx|k0>
  ComplexMatrix overlaps;  // (k, j) -> <k_x|j0> ~ delta_kj + x <k0|Hx|j0> / (E0_k - E0_j)
};

// Throws DegeneracyError when H0 has a gap <= kDegeneracyGap.
FirstOrderEstimates perturbation_first_order(const ComplexMatrix& h0, const ComplexMatrix& hx, double x);

// Largest 2-norm distance, over xs, between exp(-i tau H(x)) psi0 and the
// state-encoded reconstruction. H0 = H(0) and Hx = dH/dx of the reservoir.
// Throws UnsupportedModeError when gamma > 0.
double verify_encoding_equivalence(const ReservoirParams& params, std::span<const double> xs);

}  // namespace qrc
