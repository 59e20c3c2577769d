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
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsprep {

template <typename Scalar>
using StateVectorT = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
template <typename Scalar>
using DensityMatrixT =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Amplitudes of a pure n-qubit state; length 2^n, unit norm.
using StateVector = StateVectorT<double>;
using DensityMatrix = DensityMatrixT<double>;

/// Rotation angles (radians), one per ansatz parameter slot.
using ParamVector = Eigen::VectorXd;
using GradientVector = Eigen::VectorXd;

using Complex = std::complex<double>;

enum class GateKind { RY, RZ, X, Y, Z, CNOT };

inline const char *to_string(GateKind k) {
  switch (k) {
  case GateKind::RY:
    return "RY";
  case GateKind::RZ:
    return "RZ";
  case GateKind::X:
    return "X";
  case GateKind::Y:
    return "Y";
  case GateKind::Z:
    return "Z";
  case GateKind::CNOT:
    return "CNOT";
  }
  return "?";
}

/// A single gate acting on one qubit (plus a control for CNOT).
///
/// Rotation gates carry either a bound angle or a parameter-slot index
/// (slot >= 0 means unbound). Qubit 0 is the most significant bit of the
/// basis index throughout.
struct Gate {
  GateKind kind = GateKind::RY;
  int target = 0;
  int control = -1; // CNOT only
  double angle = 0.0;
  int slot = -1; // parameter slot when unbound

  static Gate ry(int qubit, double angle) {
    return Gate{GateKind::RY, qubit, -1, angle, -1};
  }
  static Gate ry_slot(int qubit, int slot) {
    return Gate{GateKind::RY, qubit, -1, 0.0, slot};
  }
  static Gate rz(int qubit, double angle) {
    return Gate{GateKind::RZ, qubit, -1, angle, -1};
  }
  static Gate rz_slot(int qubit, int slot) {
    return Gate{GateKind::RZ, qubit, -1, 0.0, slot};
  }
  static Gate x(int qubit) { return Gate{GateKind::X, qubit, -1, 0.0, -1}; }
  static Gate y(int qubit) { return Gate{GateKind::Y, qubit, -1, 0.0, -1}; }
  static Gate z(int qubit) { return Gate{GateKind::Z, qubit, -1, 0.0, -1}; }
  static Gate cnot(int control, int target) {
    return Gate{GateKind::CNOT, target, control, 0.0, -1};
  }

  bool is_rotation() const {
    return kind == GateKind::RY || kind == GateKind::RZ;
  }
  bool is_bound() const { return !is_rotation() || slot < 0; }

  /// Inverse gate: negated angle for rotations, self-inverse otherwise.
  Gate inverse() const {
    Gate g = *this;
    if (is_rotation()) {
      g.angle = -g.angle;
    }
    return g;
  }
};

/// Ordered gate list over a fixed qubit register.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  bool fully_bound() const {
    for (const Gate &g : gates) {
      if (!g.is_bound()) {
        return false;
      }
    }
    return true;
  }
};

/// Layered circuit depth: the longest chain of gates linked by shared
/// qubits, counting each gate as one layer on every qubit it touches.
inline int circuit_depth(const Circuit &circuit) {
  std::vector<int> level(static_cast<size_t>(circuit.n_qubits), 0);
  int depth = 0;
  for (const Gate &g : circuit.gates) {
    int layer = level[static_cast<size_t>(g.target)];
    if (g.kind == GateKind::CNOT) {
      layer = std::max(layer, level[static_cast<size_t>(g.control)]);
    }
    ++layer;
    level[static_cast<size_t>(g.target)] = layer;
    if (g.kind == GateKind::CNOT) {
      level[static_cast<size_t>(g.control)] = layer;
    }
    depth = std::max(depth, layer);
  }
  return depth;
}

inline int cnot_count(const Circuit &circuit) {
  int count = 0;
  for (const Gate &g : circuit.gates) {
    count += (g.kind == GateKind::CNOT) ? 1 : 0;
  }
  return count;
}

/// Exact inverse circuit: reversed gate order, rotation angles negated.
inline Circuit inverse(const Circuit &circuit) {
  Circuit inv;
  inv.n_qubits = circuit.n_qubits;
  inv.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    inv.gates.push_back(it->inverse());
  }
  return inv;
}

} // namespace qsprep
