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
// Gradients of circuit expectations with respect to ansatz parameters:
// the two-point parameter-shift rule, a reverse-mode adjoint sweep over the
// gate sequence, and a central finite-difference oracle. All three agree on
// the fidelity observable; the shift rule matches hardware execution while
// the adjoint costs O(gates) instead of O(params x gates).
#pragma once

#include "qsprep/ansatz.hpp"
#include "qsprep/sim.hpp"
#include "qsprep/threading.hpp"
#include "qsprep/types.hpp"

#include <functional>
#include <numbers>

namespace qsprep {

namespace detail {

/// Binds theta but keeps slot ids on rotation gates so sweeps know which
/// gate feeds which gradient entry.
inline std::vector<Gate> bind_keep_slots(const AnsatzTemplate &t,
                                         const ParamVector &theta) {
  if (theta.size() != t.slot_count()) {
    throw std::invalid_argument("gradient: parameter length mismatch");
  }
  std::vector<Gate> gates = t.gates;
  for (Gate &g : gates) {
    if (!g.is_bound()) {
      g.angle = theta[g.slot];
    }
  }
  return gates;
}

/// Applies the rotation generator -i P/2 (P = Y or Z) for gate g.
inline StateVector apply_generator(const StateVector &psi, const Gate &g) {
  Gate pauli = g;
  pauli.kind = (g.kind == GateKind::RY) ? GateKind::Y : GateKind::Z;
  pauli.slot = -1;
  StateVector out = apply_gate(psi, pauli);
  out *= Complex{0.0, -0.5};
  return out;
}

/// Reverse sweep computing factor * Re<lambda_i| dG_i |phi_{i-1}> per slot,
/// where lambda starts as `lambda_final` at the output end of the circuit.
/// With lambda_final = Obs|phi_final> and factor 2 this is the gradient of
/// <phi|Obs|phi>; with lambda_final = v and factor 1 it is the gradient of
/// Re<v|phi>.
inline GradientVector adjoint_sweep(const std::vector<Gate> &gates,
                                    int n_slots, StateVector phi,
                                    StateVector lambda, double factor) {
  GradientVector grads = GradientVector::Zero(n_slots);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate bound = *it;
    bound.slot = -1;
    if (it->is_rotation() && it->slot >= 0) {
      // (dG) phi_{i-1} = (-i P/2) G phi_{i-1} = (-i P/2) phi_i.
      const StateVector d = apply_generator(phi, bound);
      grads[it->slot] += factor * lambda.dot(d).real();
    }
    const Gate inv = bound.inverse();
    apply_gate_in_place(phi, inv);
    apply_gate_in_place(lambda, inv);
  }
  return grads;
}

} // namespace detail

/// Gradient of <phi(theta)| Obs |phi(theta)> for a Hermitian observable,
/// given `apply_observable` mapping phi to Obs*phi. O(gates) time, two
/// working states.
inline GradientVector adjoint_expectation_gradient(
    const AnsatzTemplate &t, const ParamVector &theta, const StateVector &init,
    const std::function<StateVector(const StateVector &)> &apply_observable) {
  const std::vector<Gate> gates = detail::bind_keep_slots(t, theta);
  StateVector phi = init;
  for (const Gate &g : gates) {
    Gate bound = g;
    bound.slot = -1;
    apply_gate_in_place(phi, bound);
  }
  StateVector lambda = apply_observable(phi);
  return detail::adjoint_sweep(gates, t.slot_count(), std::move(phi),
                               std::move(lambda), 2.0);
}

/// Gradient of Re<v|phi(theta)> (linear in the prepared state).
inline GradientVector adjoint_overlap_gradient(const AnsatzTemplate &t,
                                               const ParamVector &theta,
                                               const StateVector &init,
                                               const StateVector &v) {
  const std::vector<Gate> gates = detail::bind_keep_slots(t, theta);
  StateVector phi = init;
  for (const Gate &g : gates) {
    Gate bound = g;
    bound.slot = -1;
    apply_gate_in_place(phi, bound);
  }
  return detail::adjoint_sweep(gates, t.slot_count(), std::move(phi),
                               StateVector(v), 1.0);
}

/// Adjoint gradient of the fidelity <phi|P|phi>, P = |target><target|.
inline GradientVector adjoint_gradient(const AnsatzTemplate &t,
                                       const ParamVector &theta,
                                       const StateVector &target) {
  if (target.size() != (Eigen::Index{1} << t.n_qubits)) {
    throw std::invalid_argument("adjoint_gradient: target dimension mismatch");
  }
  return adjoint_expectation_gradient(
      t, theta, zero_state<double>(t.n_qubits),
      [&target](const StateVector &phi) -> StateVector {
        return target * target.dot(phi);
      });
}

/// Two-point shift rule: entry k is (E(theta_k + pi/2) - E(theta_k - pi/2))/2
/// for any expectation E of a Hermitian observable. The 2m shifted circuit
/// evaluations run in parallel; each writes its own entry.
inline GradientVector param_shift_expectation_gradient(
    const AnsatzTemplate &t, const ParamVector &theta, const StateVector &init,
    const std::function<double(const StateVector &)> &expectation) {
  if (theta.size() != t.slot_count()) {
    throw std::invalid_argument("param_shift: parameter length mismatch");
  }
  GradientVector grads = GradientVector::Zero(t.slot_count());
  parallel_for(t.slot_count(), [&](std::int64_t k) {
    ParamVector shifted = theta;
    shifted[k] = theta[k] + std::numbers::pi / 2;
    const double plus =
        expectation(apply_circuit(init, bind_parameters(t, shifted)));
    shifted[k] = theta[k] - std::numbers::pi / 2;
    const double minus =
        expectation(apply_circuit(init, bind_parameters(t, shifted)));
    grads[k] = 0.5 * (plus - minus);
  });
  return grads;
}

/// Shift-rule gradient of the fidelity against `target`.
inline GradientVector param_shift_gradient(const AnsatzTemplate &t,
                                           const ParamVector &theta,
                                           const StateVector &target) {
  if (target.size() != (Eigen::Index{1} << t.n_qubits)) {
    throw std::invalid_argument("param_shift: target dimension mismatch");
  }
  return param_shift_expectation_gradient(
      t, theta, zero_state<double>(t.n_qubits),
      [&target](const StateVector &phi) {
        return projector_expectation(phi, target);
      });
}

/// Central-difference gradient of the fidelity; the test oracle.
inline GradientVector finite_diff_gradient(const AnsatzTemplate &t,
                                           const ParamVector &theta,
                                           const StateVector &target,
                                           double epsilon = 1e-5) {
  if (epsilon < 1e-7 || epsilon > 1e-3) {
    throw std::invalid_argument("finite_diff: epsilon outside [1e-7, 1e-3]");
  }
  const StateVector init = zero_state<double>(t.n_qubits);
  GradientVector grads = GradientVector::Zero(t.slot_count());
  for (int k = 0; k < t.slot_count(); ++k) {
    ParamVector shifted = theta;
    shifted[k] = theta[k] + epsilon;
    const double plus = projector_expectation(
        apply_circuit(init, bind_parameters(t, shifted)), target);
    shifted[k] = theta[k] - epsilon;
    const double minus = projector_expectation(
        apply_circuit(init, bind_parameters(t, shifted)), target);
    grads[k] = (plus - minus) / (2.0 * epsilon);
  }
  return grads;
}

} // namespace qsprep
