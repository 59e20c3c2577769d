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
// Hardware-efficient ansatz: each block is an RY rotation layer followed by
// two CNOT sub-layers on adjacent qubit pairs, first {(0,1),(2,3),...} then
// {(1,2),(3,4),...}. Block depth is 3; parameters count n_qubits per block.
#pragma once

#include "qsprep/types.hpp"

#include <cmath>
#include <numbers>

namespace qsprep {

/// Wraps an angle into the canonical range (-pi, pi].
inline double canonical_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) {
    wrapped = std::numbers::pi;
  }
  return wrapped;
}

inline ParamVector canonicalize(ParamVector angles) {
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    angles[i] = canonical_angle(angles[i]);
  }
  return angles;
}

/// Ansatz structure with unbound RY parameter slots; immutable once built.
struct AnsatzTemplate {
  int n_qubits = 0;
  int n_blocks = 0;
  std::vector<Gate> gates;

  int slot_count() const { return n_qubits * n_blocks; }
};

/// CNOTs per block: floor(n/2) pairs in the even sub-layer plus
/// floor((n-1)/2) in the odd one. The last qubit idles when unpaired.
inline int entangler_cnots_per_block(int n_qubits) {
  return n_qubits / 2 + (n_qubits - 1) / 2;
}

/// Structural depth: every block schedules one rotation layer and two CNOT
/// sub-layers, so depth is 3 per block. At n = 2 the odd sub-layer is empty
/// and the literal dependency-chain depth drops to 2 per block; the block
/// accounting still reserves the layer.
inline int ansatz_depth(const AnsatzTemplate &t) { return 3 * t.n_blocks; }

inline AnsatzTemplate build_ansatz(int n_qubits, int n_blocks) {
  if (n_qubits < 2) {
    throw std::invalid_argument(
        "build_ansatz: n_qubits must be >= 2 (entangler undefined below)");
  }
  if (n_blocks < 1) {
    throw std::invalid_argument("build_ansatz: n_blocks must be >= 1");
  }
  AnsatzTemplate t;
  t.n_qubits = n_qubits;
  t.n_blocks = n_blocks;
  t.gates.reserve(static_cast<size_t>(n_blocks) *
                  static_cast<size_t>(n_qubits + entangler_cnots_per_block(n_qubits)));
  for (int block = 0; block < n_blocks; ++block) {
    for (int q = 0; q < n_qubits; ++q) {
      t.gates.push_back(Gate::ry_slot(q, block * n_qubits + q));
    }
    // Control is always the lower-index qubit of each adjacent pair.
    for (int q = 0; q + 1 < n_qubits; q += 2) {
      t.gates.push_back(Gate::cnot(q, q + 1));
    }
    for (int q = 1; q + 1 < n_qubits; q += 2) {
      t.gates.push_back(Gate::cnot(q, q + 1));
    }
  }
  return t;
}

/// Binds theta into the template by slot index. Angles are stored exactly
/// as given; canonicalization happens at file-load boundaries, not here, so
/// shifted bindings (theta +- pi/2) stay exact.
inline Circuit bind_parameters(const AnsatzTemplate &t,
                               const ParamVector &theta) {
  if (theta.size() != t.slot_count()) {
    throw std::invalid_argument(
        "bind_parameters: expected " + std::to_string(t.slot_count()) +
        " parameters, got " + std::to_string(theta.size()));
  }
  Circuit circuit;
  circuit.n_qubits = t.n_qubits;
  circuit.gates = t.gates;
  for (Gate &g : circuit.gates) {
    if (!g.is_bound()) {
      g.angle = theta[g.slot];
      g.slot = -1;
    }
  }
  return circuit;
}

/// Reads rotation angles back out of a bound circuit, by slot order.
inline ParamVector extract_parameters(const AnsatzTemplate &t,
                                      const Circuit &bound) {
  if (bound.gates.size() != t.gates.size()) {
    throw std::invalid_argument("extract_parameters: circuit does not match "
                                "template gate count");
  }
  ParamVector theta = ParamVector::Zero(t.slot_count());
  for (size_t i = 0; i < t.gates.size(); ++i) {
    if (!t.gates[i].is_bound()) {
      theta[t.gates[i].slot] = bound.gates[i].angle;
    }
  }
  return theta;
}

} // namespace qsprep
