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
// The three training objectives: parameter MSE against reference angles
// (L1), state-amplitude MSE (L2), and infidelity (L3).
#pragma once

#include "qsprep/ansatz.hpp"
#include "qsprep/sim.hpp"
#include "qsprep/types.hpp"

#include <optional>
#include <string>

namespace qsprep {

enum class LossKind { L1_PARAM_MSE, L2_STATE_MSE, L3_INFIDELITY };

inline const char *to_string(LossKind kind) {
  switch (kind) {
  case LossKind::L1_PARAM_MSE:
    return "L1";
  case LossKind::L2_STATE_MSE:
    return "L2";
  case LossKind::L3_INFIDELITY:
    return "L3";
  }
  return "?";
}

inline LossKind loss_kind_from_string(const std::string &s) {
  if (s == "L1" || s == "l1") {
    return LossKind::L1_PARAM_MSE;
  }
  if (s == "L2" || s == "l2") {
    return LossKind::L2_STATE_MSE;
  }
  if (s == "L3" || s == "l3") {
    return LossKind::L3_INFIDELITY;
  }
  throw std::invalid_argument("unknown loss kind: " + s);
}

/// Mean squared parameter difference, both sides canonicalized to (-pi, pi]
/// so 2*pi wraps do not register.
inline double loss_l1(const ParamVector &predicted,
                      const ParamVector &reference) {
  if (predicted.size() != reference.size()) {
    throw std::invalid_argument("loss_l1: length mismatch");
  }
  const ParamVector diff = canonicalize(predicted) - canonicalize(reference);
  return diff.squaredNorm() / static_cast<double>(diff.size());
}

/// Mean squared per-amplitude difference of real state vectors; no sign
/// alignment is applied.
inline double loss_l2(const StateVector &prepared, const StateVector &target) {
  if (prepared.size() != target.size()) {
    throw std::invalid_argument("loss_l2: dimension mismatch");
  }
  return (prepared.real() - target.real()).squaredNorm() /
         static_cast<double>(prepared.size());
}

/// Infidelity 1 - |<prepared|target>|^2; equals 1 - <target|rho|target> for
/// the pure prepared state.
inline double loss_l3(const StateVector &prepared, const StateVector &target) {
  return 1.0 - fidelity_pure(prepared, target);
}

/// Everything a loss evaluation may need; L1 requires reference angles,
/// L2/L3 require the simulated state.
struct LossContext {
  std::optional<ParamVector> predicted_theta;
  std::optional<ParamVector> reference_theta;
  std::optional<StateVector> prepared_state;
  std::optional<StateVector> target_state;
};

inline double compute_loss(LossKind kind, const LossContext &ctx) {
  switch (kind) {
  case LossKind::L1_PARAM_MSE:
    if (!ctx.predicted_theta || !ctx.reference_theta) {
      throw std::invalid_argument(
          "compute_loss: L1 requires predicted and reference parameters");
    }
    return loss_l1(*ctx.predicted_theta, *ctx.reference_theta);
  case LossKind::L2_STATE_MSE:
    if (!ctx.prepared_state || !ctx.target_state) {
      throw std::invalid_argument(
          "compute_loss: L2 requires prepared and target states");
    }
    return loss_l2(*ctx.prepared_state, *ctx.target_state);
  case LossKind::L3_INFIDELITY:
    if (!ctx.prepared_state || !ctx.target_state) {
      throw std::invalid_argument(
          "compute_loss: L3 requires prepared and target states");
    }
    return loss_l3(*ctx.prepared_state, *ctx.target_state);
  }
  throw std::invalid_argument("compute_loss: unknown kind");
}

} // namespace qsprep
