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

#include "qsprep/types.hpp"

#include <cmath>
#include <utility>

namespace qsprep {

/// Bias-corrected Adam with decoupled weight decay.
struct AdamState {
  Eigen::VectorXd first_moment;
  Eigen::VectorXd second_moment;
  long step = 0;
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;

  static AdamState create(Eigen::Index n_params, double learning_rate,
                          double weight_decay = 0.0) {
    AdamState s;
    s.first_moment = Eigen::VectorXd::Zero(n_params);
    s.second_moment = Eigen::VectorXd::Zero(n_params);
    s.learning_rate = learning_rate;
    s.weight_decay = weight_decay;
    return s;
  }
};

/// One optimizer step. Decay, when nonzero, shrinks the parameters before
/// the adaptive update (decoupled form). A non-finite gradient is an error,
/// never silently consumed.
inline void adam_update_in_place(AdamState &state, Eigen::VectorXd &params,
                                 const Eigen::VectorXd &grads) {
  if (params.size() != grads.size() ||
      params.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam_update: length mismatch");
  }
  if (!grads.allFinite()) {
    throw std::invalid_argument("adam_update: gradient contains NaN/Inf");
  }
  ++state.step;
  if (state.weight_decay != 0.0) {
    params -= state.learning_rate * state.weight_decay * params;
  }
  state.first_moment =
      state.beta1 * state.first_moment + (1.0 - state.beta1) * grads;
  state.second_moment = state.beta2 * state.second_moment +
                        (1.0 - state.beta2) * grads.cwiseProduct(grads);
  const double correction1 =
      1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double correction2 =
      1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  const Eigen::VectorXd m_hat = state.first_moment / correction1;
  const Eigen::VectorXd v_hat = state.second_moment / correction2;
  params -=
      state.learning_rate *
      (m_hat.array() / (v_hat.array().sqrt() + state.epsilon)).matrix();
}

inline std::pair<AdamState, Eigen::VectorXd>
adam_update(AdamState state, Eigen::VectorXd params,
            const Eigen::VectorXd &grads) {
  adam_update_in_place(state, params, grads);
  return {std::move(state), std::move(params)};
}

} // namespace qsprep
