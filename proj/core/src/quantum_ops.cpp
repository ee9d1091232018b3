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

#include "qrc/quantum_ops.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qrc/errors.hpp"

namespace qrc {
namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix single_qubit(SiteOp kind) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  switch (kind) {
    case SiteOp::sigma_x:
      a(0, 1) = 1.0;
      a(1, 0) = 1.0;
      break;
    case SiteOp::sigma_y:
      a(0, 1) = -kI;
      a(1, 0) = kI;
      break;
    case SiteOp::sigma_z:
      a(0, 0) = 1.0;
      a(1, 1) = -1.0;
      break;
    case SiteOp::s_down:
      a(1, 1) = 1.0;
      break;
    case SiteOp::lowering:
      a(0, 1) = 1.0;
      break;
  }
  return a;
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void require_hamiltonian(const ComplexMatrix& h, const char* who) {
  if (h.rows() != h.cols()) {
    throw ArgumentError(std::string(who) + ": Hamiltonian must be square");
  }
  if (!h.allFinite()) {
    throw ValidationError(std::string(who) + ": Hamiltonian has non-finite entries");
  }
  if (!is_hermitian(h, 1e-10 * std::max(1.0, max_abs(h)))) {
    throw ValidationError(std::string(who) + ": Hamiltonian is not Hermitian");
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix site_operator(SiteOp kind, int site, int n_qubits) {
  if (n_qubits < 1) {
    throw ArgumentError("site_operator: n_qubits must be >= 1");
  }
  if (site < 0 || site >= n_qubits) {
    throw ArgumentError("site_operator: site " + std::to_string(site) + " out of range for " +
                        std::to_string(n_qubits) + " qubits");
  }
  // I_left (x) A (x) I_right; the identities are applied as index arithmetic.
  const ComplexMatrix a = single_qubit(kind);
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - 1 - site);
  const Eigen::Index left = Eigen::Index{1} << site;
  const Eigen::Index dim = left * 2 * right;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (a(r, c) == Complex{}) continue;
        for (Eigen::Index k = 0; k < right; ++k) {
          out((l * 2 + r) * right + k, (l * 2 + c) * right + k) = a(r, c);
        }
      }
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix driven_ising_hamiltonian(const RealVector& detunings, const RealVector& rabi,
                                       const RealMatrix& couplings, double scale, double x) {
  const auto n = static_cast<int>(detunings.size());
  if (n < 1 || rabi.size() != n || couplings.rows() != n || couplings.cols() != n) {
    throw ArgumentError("driven_ising_hamiltonian: parameter lengths do not match");
  }
  if (n > kMaxDenseQubits + 4) {
    throw ResourceError("driven_ising_hamiltonian: register too large for dense operators");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  // Every term except sigma_x is diagonal in the computational basis.
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      const bool excited_j = (b >> (n - 1 - j)) & 1;
      if (!excited_j) continue;
      diag -= detunings[j] + scale * x;
      for (int m = j + 1; m < n; ++m) {
        if ((b >> (n - 1 - m)) & 1) diag += couplings(j, m) / static_cast<double>(n - 1);
      }
    }
    h(b, b) = diag;
    for (int j = 0; j < n; ++j) {
      const Eigen::Index flipped = b ^ (Eigen::Index{1} << (n - 1 - j));
      h(b, flipped) += 0.5 * rabi[j];
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState QuantumState::pure(ComplexVector psi) {
  if (psi.size() == 0 || !psi.allFinite()) {
    throw ValidationError("QuantumState::pure: empty or non-finite vector");
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ValidationError("QuantumState::pure: |psi| = " + fmt_double(norm) + ", expected 1");
  }
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::density(ComplexMatrix rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols() || !rho.allFinite()) {
    throw ValidationError("QuantumState::density: expected a finite square matrix");
  }
  try {
    check_density(rho, 1e-10, 1e-10, -1e-9);
  } catch (const NumericalIntegrityError& e) {
    throw ValidationError(std::string("QuantumState::density: ") + e.what());
  }
  return QuantumState(std::move(rho));
}

QuantumState QuantumState::projector(const QuantumState& pure_state) {
  if (!pure_state.is_pure()) {
    throw ArgumentError("QuantumState::projector: input is not a pure state");
  }
  const ComplexVector& psi = pure_state.vector();
  return QuantumState(ComplexMatrix(psi * psi.adjoint()));
}

QuantumState QuantumState::ground(int n_qubits) {
  if (n_qubits < 1) throw ArgumentError("QuantumState::ground: n_qubits must be >= 1");
  ComplexVector psi = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  psi[0] = 1.0;
  return QuantumState(std::move(psi));
}

Eigen::Index QuantumState::dim() const noexcept {
  return is_pure() ? vector().size() : matrix().rows();
}

ComplexMatrix QuantumState::density_matrix() const {
  if (is_pure()) return vector() * vector().adjoint();
  return matrix();
}

void check_density(const ComplexMatrix& rho, double trace_tol, double hermitian_tol, double eigen_floor) {
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw NumericalIntegrityError("density trace drifted to " + fmt_double(tr.real()) + (tr.imag() >= 0 ? "+" : "") +
                                  fmt_double(tr.imag()) + "i");
  }
  if (!is_hermitian(rho, hermitian_tol)) {
    throw NumericalIntegrityError("density matrix is not Hermitian to " + fmt_double(hermitian_tol));
  }
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < eigen_floor) {
    throw NumericalIntegrityError("density eigenvalue " + fmt_double(lowest) + " below " + fmt_double(eigen_floor));
  }
}

// ---------------------------------------------------------------------------
// Unitary propagation

ComplexMatrix unitary_propagator(const ComplexMatrix& hamiltonian, double tau) {
  require_hamiltonian(hamiltonian, "unitary_propagator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw NumericalIntegrityError("unitary_propagator: eigendecomposition failed");
  }
  const ComplexMatrix& v = es.eigenvectors();
  ComplexVector phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phases[k] = std::exp(-kI * es.eigenvalues()[k] * tau);
  return v * phases.asDiagonal() * v.adjoint();
}

QuantumState unitary_evolve(const QuantumState& psi0, const ComplexMatrix& hamiltonian, double tau) {
  if (!psi0.is_pure()) {
    throw ValidationError("unitary_evolve: expects a pure state");
  }
  if (hamiltonian.rows() != psi0.dim()) {
    throw ArgumentError("unitary_evolve: Hamiltonian dimension does not match the state");
  }
  require_hamiltonian(hamiltonian, "unitary_evolve");
  if (tau == 0.0) return psi0;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw NumericalIntegrityError("unitary_evolve: eigendecomposition failed");
  }
  const ComplexMatrix& v = es.eigenvectors();
  ComplexVector amp = v.adjoint() * psi0.vector();
  for (Eigen::Index k = 0; k < amp.size(); ++k) amp[k] *= std::exp(-kI * es.eigenvalues()[k] * tau);
  ComplexVector psi = v * amp;
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw NumericalIntegrityError("unitary_evolve: norm drifted to " + fmt_double(norm));
  }
  return QuantumState::unchecked_pure(std::move(psi));
}

// ---------------------------------------------------------------------------
// Lindblad generator

Liouvillian::Liouvillian(ComplexMatrix superoperator, Eigen::Index system_dim)
    : superop_(std::move(superoperator)), system_dim_(system_dim) {
  if (superop_.rows() != system_dim_ * system_dim_ || superop_.cols() != superop_.rows()) {
    throw ArgumentError("Liouvillian: superoperator must be (d^2 x d^2)");
  }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != system_dim_ || rho.cols() != system_dim_) {
    throw ArgumentError("Liouvillian::apply: dimension mismatch");
  }
  const ComplexVector out = superop_ * rho.reshaped();
  return out.reshaped(system_dim_, system_dim_);
}

Liouvillian lindblad_generator(const ComplexMatrix& hamiltonian, std::span<const ComplexMatrix> jump_ops) {
  require_hamiltonian(hamiltonian, "lindblad_generator");
  const Eigen::Index d = hamiltonian.rows();
  if (d > (Eigen::Index{1} << kMaxDenseQubits)) {
    throw ResourceError("lindblad_generator: a " + std::to_string(d * d) + "-dimensional Liouvillian exceeds the dense limit of " +
                        std::to_string(kMaxDenseQubits) + " qubits");
  }
  for (const auto& l : jump_ops) {
    if (l.rows() != d || l.cols() != d) {
      throw ArgumentError("lindblad_generator: jump operator dimension does not match the Hamiltonian");
    }
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  // vec(H rho) = (I (x) H) vec(rho), vec(rho H) = (H^T (x) I) vec(rho)
  ComplexMatrix gen = -kI * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  for (const auto& l : jump_ops) {
    const ComplexMatrix ldl = l.adjoint() * l;
    gen += kron(l.conjugate(), l);
    gen -= 0.5 * (kron(id, ldl) + kron(ldl.transpose(), id));
  }
  return Liouvillian(std::move(gen), d);
}

QuantumState dissipative_evolve(const QuantumState& rho0, const Liouvillian& generator, double tau) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw ArgumentError("dissipative_evolve: tau must be finite and >= 0");
  }
  if (rho0.dim() != generator.system_dim()) {
    throw ArgumentError("dissipative_evolve: state dimension does not match the generator");
  }
  ComplexMatrix rho = rho0.density_matrix();
  if (tau == 0.0) return QuantumState::unchecked_density(std::move(rho));

  const ComplexMatrix prop = (generator.matrix() * tau).exp();
  const ComplexVector out = prop * rho.reshaped();
  ComplexMatrix rho_t = out.reshaped(generator.system_dim(), generator.system_dim());
  check_density(rho_t, 1e-9, 1e-9, -1e-8);
  return QuantumState::unchecked_density(std::move(rho_t));
}

RealVector expectation_values(const QuantumState& state, std::span<const ComplexMatrix> observables) {
  RealVector out(static_cast<Eigen::Index>(observables.size()));
  const Eigen::Index d = state.dim();
  for (std::size_t k = 0; k < observables.size(); ++k) {
    const ComplexMatrix& o = observables[k];
    if (o.rows() != d || o.cols() != d) {
      throw ArgumentError("expectation_values: observable " + std::to_string(k) + " has the wrong dimension");
    }
    Complex value;
    if (state.is_pure()) {
      value = state.vector().dot(o * state.vector());
    } else {
      // Tr(rho O) = sum_ab rho_ab O_ba
      value = (state.matrix().transpose().cwiseProduct(o)).sum();
    }
    if (std::abs(value.imag()) >= 1e-8) {
      throw NumericalIntegrityError("expectation_values: observable " + std::to_string(k) + " has imaginary part " +
                                    fmt_double(value.imag()));
    }
    out[static_cast<Eigen::Index>(k)] = value.real();
  }
  return out;
}

}  // namespace qrc
