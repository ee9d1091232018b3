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

// Dense qubit operators, Hamiltonians, Lindblad generators and exact
// propagators.
//
// Tensor ordering: site 0 is the leftmost Kronecker factor, so for n qubits the
// computational basis index is b = sum_j bit_j * 2^(n-1-j). Single-qubit basis
// |0> has sigma_z = +1 (ground), |1> has sigma_z = -1 (excited).

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Largest register for which the dense propagators (including the 4^N x 4^N
// Liouvillian) are permitted.
inline constexpr int kMaxDenseQubits = 6;

enum class SiteOp { sigma_x, sigma_y, sigma_z, s_down, lowering };

// Returns I (x) ... (x) A (x) ... (x) I with A at position `site`.
// s_down = (I - sigma_z)/2 = diag(0, 1); lowering = |0><1|.
ComplexMatrix site_operator(SiteOp kind, int site, int n_qubits);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise |A - A^dagger| <= tol.
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

// Driven Ising reservoir Hamiltonian
//   H(x) = sum_j [-(d_j + s x) Sd_j + (w_j / 2) X_j]
//        + sum_{m<n} V_mn / (N - 1) Sd_m Sd_n
// with d = detunings, w = Rabi frequencies, V = symmetric couplings (only the
// strict upper triangle is read). The interaction sum is empty for N = 1.
ComplexMatrix driven_ising_hamiltonian(const RealVector& detunings, const RealVector& rabi,
                                       const RealMatrix& couplings, double scale, double x);

// Pure state vector or density matrix on a 2^N dimensional register.
class QuantumState {
 public:
  enum class Kind { pure, density };

  // Throws ValidationError unless |psi| = 1 +- 1e-10.
  static QuantumState pure(ComplexVector psi);
  // Throws ValidationError unless trace = 1 +- 1e-10, Hermitian to 1e-10 and
  // all eigenvalues >= -1e-9.
  static QuantumState density(ComplexMatrix rho);
  // |psi><psi|
  static QuantumState projector(const QuantumState& pure_state);
  // |0...0>
  static QuantumState ground(int n_qubits);

  Kind kind() const noexcept { return std::holds_alternative<ComplexVector>(data_) ? Kind::pure : Kind::density; }
  bool is_pure() const noexcept { return kind() == Kind::pure; }
  Eigen::Index dim() const noexcept;

  // Preconditions: is_pure() / !is_pure() respectively.
  const ComplexVector& vector() const { return std::get<ComplexVector>(data_); }
  const ComplexMatrix& matrix() const { return std::get<ComplexMatrix>(data_); }

  ComplexMatrix density_matrix() const;

  // Skips validation. Used by propagators that run their own post-checks.
  static QuantumState unchecked_pure(ComplexVector psi) { return QuantumState(std::move(psi)); }
  static QuantumState unchecked_density(ComplexMatrix rho) { return QuantumState(std::move(rho)); }

 private:
  explicit QuantumState(ComplexVector psi) : data_(std::move(psi)) {}
  explicit QuantumState(ComplexMatrix rho) : data_(std::move(rho)) {}

  std::variant<ComplexVector, ComplexMatrix> data_;
};

// Checks trace, Hermiticity and the smallest eigenvalue against the given
// tolerances; throws NumericalIntegrityError with a description otherwise.
void check_density(const ComplexMatrix& rho, double trace_tol, double hermitian_tol, double eigen_floor);

// exp(-i H tau) psi0 via Hermitian eigendecomposition of H.
// Throws ValidationError for non-Hermitian H or a mixed input state.
QuantumState unitary_evolve(const QuantumState& psi0, const ComplexMatrix& hamiltonian, double tau);

// exp(-i H tau) as a dense matrix.
ComplexMatrix unitary_propagator(const ComplexMatrix& hamiltonian, double tau);

// Vectorized GKSL generator. Vectorization is column stacking,
// vec(A X B) = (B^T (x) A) vec(X).
class Liouvillian {
 public:
  Liouvillian(ComplexMatrix superoperator, Eigen::Index system_dim);

  const ComplexMatrix& matrix() const noexcept { return superop_; }
  Eigen::Index system_dim() const noexcept { return system_dim_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix superop_;
  Eigen::Index system_dim_;
};

// d rho/dt = -i[H, rho] + sum_j (L_j rho L_j^+ - 1/2 {L_j^+ L_j, rho}).
// Throws ArgumentError on dimension mismatch, ValidationError on non-Hermitian
// H and ResourceError beyond kMaxDenseQubits.
Liouvillian lindblad_generator(const ComplexMatrix& hamiltonian, std::span<const ComplexMatrix> jump_ops);

// exp(L tau)[rho0] with a dense scaling-and-squaring Pade exponential of the
// superoperator. Post-checked: trace and Hermiticity to 1e-9, eigenvalues
// >= -1e-8 (NumericalIntegrityError otherwise).
QuantumState dissipative_evolve(const QuantumState& rho0, const Liouvillian& generator, double tau);

// <O_k> for every observable. Imaginary residues below 1e-8 are dropped,
// larger ones raise NumericalIntegrityError.
RealVector expectation_values(const QuantumState& state, std::span<const ComplexMatrix> observables);

}  // namespace qrc
