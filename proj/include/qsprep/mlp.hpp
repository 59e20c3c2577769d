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
// Two-layer perceptron mapping a state's amplitude vector to ansatz
// angles: theta = pi * tanh(W2 tanh(W1 x + b1) + b2). The trailing tanh is
// scaled by pi so outputs cover the full canonical angle range (-pi, pi).
#pragma once

#include "qsprep/rng.hpp"
#include "qsprep/types.hpp"

#include <cmath>
#include <numbers>

namespace qsprep {

inline constexpr int kDefaultHiddenWidth = 512;

/// Weight matrices are stored with one row per output neuron.
struct MlpWeights {
  int n_qubits = 0;
  int n_blocks = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd w1; // hidden x 2^n
  Eigen::VectorXd b1; // hidden
  Eigen::MatrixXd w2; // (n*l) x hidden
  Eigen::VectorXd b2; // n*l

  Eigen::Index input_dim() const { return w1.cols(); }
  Eigen::Index hidden_width() const { return w1.rows(); }
  Eigen::Index output_dim() const { return w2.rows(); }

  Eigen::Index parameter_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
  }

  /// Flat parameter order: w1 row-major, b1, w2 row-major, b2.
  Eigen::VectorXd to_vector() const {
    Eigen::VectorXd flat(parameter_count());
    Eigen::Index offset = 0;
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
      flat.segment(offset, w1.cols()) = w1.row(r);
      offset += w1.cols();
    }
    flat.segment(offset, b1.size()) = b1;
    offset += b1.size();
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
      flat.segment(offset, w2.cols()) = w2.row(r);
      offset += w2.cols();
    }
    flat.segment(offset, b2.size()) = b2;
    return flat;
  }

  void from_vector(const Eigen::VectorXd &flat) {
    if (flat.size() != parameter_count()) {
      throw std::invalid_argument("MlpWeights::from_vector: length mismatch");
    }
    Eigen::Index offset = 0;
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
      w1.row(r) = flat.segment(offset, w1.cols());
      offset += w1.cols();
    }
    b1 = flat.segment(offset, b1.size());
    offset += b1.size();
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
      w2.row(r) = flat.segment(offset, w2.cols());
      offset += w2.cols();
    }
    b2 = flat.segment(offset, b2.size());
  }
};

/// Glorot-uniform weight init, zero biases; deterministic per seed.
inline MlpWeights init_mlp(int n_qubits, int n_blocks, int hidden_width,
                           std::uint64_t seed) {
  if (n_qubits < 1 || n_blocks < 1 || hidden_width < 1) {
    throw std::invalid_argument("init_mlp: sizes must be positive");
  }
  const Eigen::Index input = Eigen::Index{1} << n_qubits;
  const Eigen::Index output = Eigen::Index{n_qubits} * n_blocks;
  MlpWeights w;
  w.n_qubits = n_qubits;
  w.n_blocks = n_blocks;
  w.seed = seed;
  w.w1.resize(hidden_width, input);
  w.b1 = Eigen::VectorXd::Zero(hidden_width);
  w.w2.resize(output, hidden_width);
  w.b2 = Eigen::VectorXd::Zero(output);
  Rng rng(seed);
  const double bound1 = std::sqrt(6.0 / static_cast<double>(input + hidden_width));
  for (Eigen::Index r = 0; r < w.w1.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.w1.cols(); ++c) {
      w.w1(r, c) = uniform(rng, -bound1, bound1);
    }
  }
  const double bound2 =
      std::sqrt(6.0 / static_cast<double>(hidden_width + output));
  for (Eigen::Index r = 0; r < w.w2.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.w2.cols(); ++c) {
      w.w2(r, c) = uniform(rng, -bound2, bound2);
    }
  }
  return w;
}

/// Forward activations cached for the backward pass.
struct MlpCache {
  Eigen::VectorXd input;       // x
  Eigen::VectorXd hidden;      // tanh(W1 x + b1)
  Eigen::VectorXd output_tanh; // tanh(W2 hidden + b2)
};

/// theta_hat = pi * tanh(W2 tanh(W1 x + b1) + b2); every entry in (-pi, pi).
inline ParamVector mlp_forward(const MlpWeights &w, const Eigen::VectorXd &x,
                               MlpCache *cache = nullptr) {
  if (x.size() != w.input_dim()) {
    throw std::invalid_argument("mlp_forward: input length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(w.input_dim()));
  }
  const Eigen::VectorXd hidden = (w.w1 * x + w.b1).array().tanh();
  const Eigen::VectorXd out_tanh = (w.w2 * hidden + w.b2).array().tanh();
  if (cache != nullptr) {
    cache->input = x;
    cache->hidden = hidden;
    cache->output_tanh = out_tanh;
  }
  return std::numbers::pi * out_tanh;
}

struct MlpGrads {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;

  /// Same flat order as MlpWeights::to_vector.
  Eigen::VectorXd to_vector() const {
    Eigen::VectorXd flat(w1.size() + b1.size() + w2.size() + b2.size());
    Eigen::Index offset = 0;
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
      flat.segment(offset, w1.cols()) = w1.row(r);
      offset += w1.cols();
    }
    flat.segment(offset, b1.size()) = b1;
    offset += b1.size();
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
      flat.segment(offset, w2.cols()) = w2.row(r);
      offset += w2.cols();
    }
    flat.segment(offset, b2.size()) = b2;
    return flat;
  }
};

/// Exact reverse-mode gradients of the forward expression, including the pi
/// output scaling, for a given upstream dLoss/dTheta.
inline MlpGrads mlp_backward(const MlpWeights &w, const MlpCache &cache,
                             const Eigen::VectorXd &upstream) {
  if (upstream.size() != w.output_dim()) {
    throw std::invalid_argument("mlp_backward: upstream length mismatch");
  }
  MlpGrads g;
  const Eigen::VectorXd dz2 =
      upstream.array() * std::numbers::pi *
      (1.0 - cache.output_tanh.array().square());
  g.w2 = dz2 * cache.hidden.transpose();
  g.b2 = dz2;
  const Eigen::VectorXd dz1 = (w.w2.transpose() * dz2).array() *
                              (1.0 - cache.hidden.array().square());
  g.w1 = dz1 * cache.input.transpose();
  g.b1 = dz1;
  return g;
}

} // namespace qsprep
