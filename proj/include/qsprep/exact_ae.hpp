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
// Exact amplitude encoding for real target vectors: a binary tree of RY
// angles (beta = 2*atan2(right, left) over subtree norms) compiled into
// multiplexed rotations, each expanded with the Gray-code CNOT pattern.
#pragma once

#include "qsprep/sim.hpp"
#include "qsprep/types.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace qsprep {

/// Per-level rotation angles of the decomposition tree; level k holds the
/// 2^k angles of the multiplexed RY on qubit k.
struct AngleTree {
  int n_qubits = 0;
  std::vector<std::vector<double>> levels;
};

/// Decomposes a normalized real vector of length 2^n. Internal tree nodes
/// are nonnegative subtree norms; leaf signs are recovered by the
/// bottom-level angles, so no phase stage is needed for real targets.
inline AngleTree mottonen_angles(const Eigen::VectorXd &target) {
  const Eigen::Index dim = target.size();
  const int n = num_qubits(dim);
  const double norm = target.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("mottonen_angles: zero-norm input");
  }
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("mottonen_angles: input is not normalized");
  }

  AngleTree tree;
  tree.n_qubits = n;
  tree.levels.resize(static_cast<size_t>(n));

  std::vector<double> values(target.data(), target.data() + dim);
  for (int level = n - 1; level >= 0; --level) {
    const size_t count = size_t{1} << level;
    std::vector<double> parents(count);
    auto &angles = tree.levels[static_cast<size_t>(level)];
    angles.resize(count);
    for (size_t j = 0; j < count; ++j) {
      const double left = values[2 * j];
      const double right = values[2 * j + 1];
      parents[j] = std::hypot(left, right);
      angles[j] = (parents[j] == 0.0) ? 0.0 : 2.0 * std::atan2(right, left);
    }
    values = std::move(parents);
  }
  return tree;
}

namespace detail {

inline std::uint64_t gray_code(std::uint64_t i) { return i ^ (i >> 1); }

/// Appends the Gray-code expansion of a multiplexed RY on `target_qubit`
/// controlled by qubits [0, target_qubit): 2^k rotations interleaved with
/// 2^k CNOTs (none for k = 0). `angles[p]` is the rotation for control
/// pattern p, big-endian over the control qubits.
inline void append_multiplexed_ry(Circuit &circuit, int target_qubit,
                                  const std::vector<double> &angles) {
  const int k = target_qubit;
  const size_t count = size_t{1} << k;
  if (angles.size() != count) {
    throw std::invalid_argument("append_multiplexed_ry: angle count mismatch");
  }
  if (k == 0) {
    circuit.gates.push_back(Gate::ry(0, angles[0]));
    return;
  }
  // theta_i = 2^-k * sum_p (-1)^<g_i, p> angles[p]; H with entries
  // (-1)^<g_i, p> is orthogonal up to 2^k, which makes the net rotation on
  // each control pattern come out to exactly angles[p].
  std::vector<double> rotations(count, 0.0);
  for (size_t i = 0; i < count; ++i) {
    const std::uint64_t g = gray_code(i);
    double acc = 0.0;
    for (size_t p = 0; p < count; ++p) {
      const int parity = std::popcount(g & p) & 1;
      acc += parity ? -angles[p] : angles[p];
    }
    rotations[i] = acc / static_cast<double>(count);
  }
  for (size_t i = 0; i < count; ++i) {
    circuit.gates.push_back(Gate::ry(target_qubit, rotations[i]));
    const std::uint64_t flipped =
        gray_code(i) ^ gray_code((i + 1) & (count - 1));
    if (std::popcount(flipped) != 1) {
      throw std::logic_error("gray code walk must flip exactly one bit");
    }
    // Bit b of the pattern (LSB = 0) belongs to control qubit k-1-b.
    const int bit = std::countr_zero(flipped);
    circuit.gates.push_back(Gate::cnot(k - 1 - bit, target_qubit));
  }
}

} // namespace detail

/// Synthesizes an RY+CNOT circuit preparing the signed real target exactly
/// from |0...0>.
inline Circuit synthesize_ae_circuit(const Eigen::VectorXd &target) {
  const AngleTree tree = mottonen_angles(target);
  Circuit circuit;
  circuit.n_qubits = tree.n_qubits;
  for (int level = 0; level < tree.n_qubits; ++level) {
    detail::append_multiplexed_ry(circuit, level,
                                  tree.levels[static_cast<size_t>(level)]);
  }
  return circuit;
}

} // namespace qsprep
