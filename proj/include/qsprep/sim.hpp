// Copyright 2026 The qsprep developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Exact dense statevector simulation of the {RY, RZ, X, Y, Z, CNOT} gate
// set, with qubit 0 as the most significant bit of the basis index.
#pragma once

#include "qsprep/types.hpp"

#include <cmath>

namespace qsprep {

inline int num_qubits(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("state dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  return n;
}

template <typename Scalar>
int num_qubits(const StateVectorT<Scalar> &state) {
  return num_qubits(state.size());
}

/// |0...0> on n qubits.
template <typename Scalar = double>
StateVectorT<Scalar> zero_state(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("n_qubits must be >= 1");
  }
  StateVectorT<Scalar> state =
      StateVectorT<Scalar>::Zero(Eigen::Index{1} << n_qubits);
  state[0] = Scalar{1};
  return state;
}

/// Basis state |j> on n qubits (big-endian index).
template <typename Scalar = double>
StateVectorT<Scalar> basis_state(int n_qubits, Eigen::Index j) {
  StateVectorT<Scalar> state = zero_state<Scalar>(n_qubits);
  state[0] = Scalar{0};
  state[j] = Scalar{1};
  return state;
}

namespace detail {

template <typename Scalar>
void apply_single_qubit(StateVectorT<Scalar> &psi, int qubit,
                        std::complex<Scalar> m00, std::complex<Scalar> m01,
                        std::complex<Scalar> m10, std::complex<Scalar> m11) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index stride = dim >> (qubit + 1);
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const std::complex<Scalar> a0 = psi[i];
      const std::complex<Scalar> a1 = psi[i + stride];
      psi[i] = m00 * a0 + m01 * a1;
      psi[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

template <typename Scalar>
void check_qubit(const StateVectorT<Scalar> &psi, int qubit) {
  const int n = num_qubits(psi);
  if (qubit < 0 || qubit >= n) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n) +
                            " qubits");
  }
}

} // namespace detail

/// In-place gate application; the only mutating entry point.
template <typename Scalar>
void apply_gate_in_place(StateVectorT<Scalar> &psi, const Gate &g) {
  using C = std::complex<Scalar>;
  detail::check_qubit(psi, g.target);
  if (!g.is_bound()) {
    throw std::invalid_argument("gate " + std::string(to_string(g.kind)) +
                                " has unbound parameter slot " +
                                std::to_string(g.slot));
  }
  const Eigen::Index dim = psi.size();
  switch (g.kind) {
  case GateKind::RY: {
    const Scalar c = std::cos(static_cast<Scalar>(g.angle) / 2);
    const Scalar s = std::sin(static_cast<Scalar>(g.angle) / 2);
    detail::apply_single_qubit<Scalar>(psi, g.target, C{c, 0}, C{-s, 0},
                                       C{s, 0}, C{c, 0});
    break;
  }
  case GateKind::RZ: {
    const Scalar h = static_cast<Scalar>(g.angle) / 2;
    detail::apply_single_qubit<Scalar>(psi, g.target,
                                       C{std::cos(h), -std::sin(h)}, C{0, 0},
                                       C{0, 0}, C{std::cos(h), std::sin(h)});
    break;
  }
  case GateKind::X:
    detail::apply_single_qubit<Scalar>(psi, g.target, C{0, 0}, C{1, 0},
                                       C{1, 0}, C{0, 0});
    break;
  case GateKind::Y:
    detail::apply_single_qubit<Scalar>(psi, g.target, C{0, 0}, C{0, -1},
                                       C{0, 1}, C{0, 0});
    break;
  case GateKind::Z:
    detail::apply_single_qubit<Scalar>(psi, g.target, C{1, 0}, C{0, 0},
                                       C{0, 0}, C{-1, 0});
    break;
  case GateKind::CNOT: {
    detail::check_qubit(psi, g.control);
    if (g.control == g.target) {
      throw std::invalid_argument("CNOT control equals target");
    }
    const int n = num_qubits(psi);
    const Eigen::Index cmask = Eigen::Index{1} << (n - 1 - g.control);
    const Eigen::Index tmask = Eigen::Index{1} << (n - 1 - g.target);
    for (Eigen::Index j = 0; j < dim; ++j) {
      if ((j & cmask) != 0 && (j & tmask) == 0) {
        std::swap(psi[j], psi[j | tmask]);
      }
    }
    break;
  }
  }
}

/// Value-semantics wrapper: returns the evolved state, input untouched.
template <typename Scalar>
StateVectorT<Scalar> apply_gate(StateVectorT<Scalar> state, const Gate &g) {
  apply_gate_in_place(state, g);
  return state;
}

template <typename Scalar>
void apply_circuit_in_place(StateVectorT<Scalar> &psi, const Circuit &circuit) {
  if (num_qubits(psi) != circuit.n_qubits) {
    throw std::invalid_argument("state/circuit qubit count mismatch");
  }
  for (const Gate &g : circuit.gates) {
    apply_gate_in_place(psi, g);
  }
}

template <typename Scalar>
StateVectorT<Scalar> apply_circuit(StateVectorT<Scalar> state,
                                   const Circuit &circuit) {
  apply_circuit_in_place(state, circuit);
  return state;
}

/// Runs `circuit` on |0...0>.
inline StateVector run_circuit(const Circuit &circuit) {
  return apply_circuit(zero_state<double>(circuit.n_qubits), circuit);
}

/// |<a|b>|^2 for pure states; symmetric and global-phase invariant.
template <typename Scalar>
Scalar fidelity_pure(const StateVectorT<Scalar> &a,
                     const StateVectorT<Scalar> &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  return std::norm(a.dot(b));
}

/// <state| P |state> with P = |target><target|. Identical to fidelity_pure;
/// exposed as the observable-expectation entry point used by the shift rule.
template <typename Scalar>
Scalar projector_expectation(const StateVectorT<Scalar> &state,
                             const StateVectorT<Scalar> &target) {
  return fidelity_pure(state, target);
}

/// <Z_qubit> of a pure state: +1 weight when the qubit reads 0, -1 when 1.
template <typename Scalar>
Scalar pauli_z_expectation(const StateVectorT<Scalar> &state, int qubit) {
  detail::check_qubit(state, qubit);
  const int n = num_qubits(state);
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - qubit);
  Scalar expectation = 0;
  for (Eigen::Index j = 0; j < state.size(); ++j) {
    const Scalar p = std::norm(state[j]);
    expectation += ((j & mask) == 0) ? p : -p;
  }
  return expectation;
}

/// |psi><psi| as a density matrix.
template <typename Scalar>
DensityMatrixT<Scalar> pure_density(const StateVectorT<Scalar> &psi) {
  return psi * psi.adjoint();
}

/// Throws unless rho is Hermitian with unit trace (within tol) and
/// eigenvalues above -eig_tol.
template <typename Scalar>
void validate_density(const DensityMatrixT<Scalar> &rho, Scalar tol = 1e-12,
                      Scalar eig_tol = 1e-10) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix is not square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - std::complex<Scalar>{1, 0}) > tol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrixT<Scalar>> solver(
      rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -eig_tol) {
    throw std::invalid_argument("density matrix has negative eigenvalues");
  }
}

namespace detail {

/// Eigenvalues below 1e-13 of the largest are rounding noise from rank-
/// deficient inputs; square-rooting them would inject sqrt(eps) errors, so
/// they clamp to zero first.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic>
clamped_sqrt_eigenvalues(const Eigen::Vector<Scalar, Eigen::Dynamic> &values) {
  const Scalar largest = values.maxCoeff();
  const Scalar threshold = Scalar{1e-13} * std::max(largest, Scalar{0});
  Eigen::Vector<Scalar, Eigen::Dynamic> roots(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    roots[i] = values[i] <= threshold ? Scalar{0} : std::sqrt(values[i]);
  }
  return roots;
}

} // namespace detail

/// Uhlmann fidelity F(rho, sigma) = Tr(sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// via Hermitian eigendecompositions. Reduces to fidelity_pure on pure
/// inputs.
template <typename Scalar>
Scalar fidelity_mixed(const DensityMatrixT<Scalar> &rho,
                      const DensityMatrixT<Scalar> &sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("fidelity_mixed: dimension mismatch");
  }
  validate_density(rho);
  validate_density(sigma);
  Eigen::SelfAdjointEigenSolver<DensityMatrixT<Scalar>> rho_eig(rho);
  const auto sqrt_values =
      detail::clamped_sqrt_eigenvalues<Scalar>(rho_eig.eigenvalues());
  const DensityMatrixT<Scalar> sqrt_rho = rho_eig.eigenvectors() *
                                          sqrt_values.asDiagonal() *
                                          rho_eig.eigenvectors().adjoint();
  const DensityMatrixT<Scalar> inner = sqrt_rho * sigma * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<DensityMatrixT<Scalar>> inner_eig(
      inner, Eigen::EigenvaluesOnly);
  return std::pow(
      detail::clamped_sqrt_eigenvalues<Scalar>(inner_eig.eigenvalues()).sum(),
      2);
}

} // namespace qsprep
