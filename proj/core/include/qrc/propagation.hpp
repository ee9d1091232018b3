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

#include <span>

#include "qrc/quantum_ops.hpp"

namespace qrc {

struct ChebyshevStats {
  int terms = 0;            // generator applications
  double half_width = 0.0;  // tau * (spectral spread of H + dissipator bound)
};

/// Matrix-free GKSL propagation, exp(tau L)[rho0].
///
/// The generator is never assembled. Its numerical range lies in the strip
/// |Im z| <= w + b, |Re z| <= b with w = E_max(H) - E_min(H) and
/// b = 2 sum_j |L_j|^2, so the exponential is expanded as
///
///   exp(tau L) = J_0(r) + 2 sum_k J_k(r) S_k,   r = tau (w + b),
///   S_0 = 1, S_1 = A, S_{k+1} = 2 A S_k + S_{k-1},   A = tau L / r,
///
/// (Chebyshev series of exp(i r t) on t in [-1, 1]). Every S_k[rho] stays
/// Hermitian, so one dense d x d product per term suffices. The series is cut
/// once k > r and the last three contributions are below 1e-16.
///
/// Throws ArgumentError for tau < 0 or mismatched dimensions and
/// NumericalIntegrityError if the output fails the density post-checks
/// (trace/Hermiticity 1e-9, eigenvalues >= -1e-8).
QuantumState propagate_density(const QuantumState& rho0, const ComplexMatrix& hamiltonian,
                               std::span<const ComplexMatrix> jump_ops, double tau,
                               ChebyshevStats* stats = nullptr);

}  // namespace qrc
