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
// Downstream QML demo: a binary classifier made of a frozen state-
// preparation encoder, m trainable ansatz blocks, and a Z readout on qubit
// 0 mapped to a probability. Encoder parameters never update during QNN
// training, so encoded states are computed once per sample.
#pragma once

#include "qsprep/aae.hpp"
#include "qsprep/adam.hpp"
#include "qsprep/ansatz.hpp"
#include "qsprep/data.hpp"
#include "qsprep/exact_ae.hpp"
#include "qsprep/grad.hpp"
#include "qsprep/superencoder.hpp"
#include "qsprep/threading.hpp"

#include <cmath>
#include <optional>

namespace qsprep {

enum class EncoderKind { EXACT_AE, AAE, SUPERENCODER };

inline const char *to_string(EncoderKind kind) {
  switch (kind) {
  case EncoderKind::EXACT_AE:
    return "ae";
  case EncoderKind::AAE:
    return "aae";
  case EncoderKind::SUPERENCODER:
    return "superencoder";
  }
  return "?";
}

inline EncoderKind encoder_from_string(const std::string &s) {
  if (s == "ae" || s == "exact-ae") {
    return EncoderKind::EXACT_AE;
  }
  if (s == "aae") {
    return EncoderKind::AAE;
  }
  if (s == "superencoder" || s == "se") {
    return EncoderKind::SUPERENCODER;
  }
  throw std::invalid_argument("unknown encoder kind: " + s);
}

/// Frozen per-sample state preparation. AAE seeds derive from the base
/// seed plus the sample index, so encoding is reproducible sample by
/// sample.
struct QnnEncoder {
  EncoderKind kind = EncoderKind::EXACT_AE;
  int n_blocks = 0;   // AAE / SuperEncoder circuits
  int aae_steps = 100;
  std::uint64_t aae_seed = 0;
  std::optional<MlpWeights> se_weights;

  StateVector encode(const Eigen::VectorXd &normalized,
                     size_t sample_index) const {
    switch (kind) {
    case EncoderKind::EXACT_AE:
      return run_circuit(synthesize_ae_circuit(normalized));
    case EncoderKind::AAE: {
      const StateVector target = normalized.cast<Complex>();
      const OptimizationTrace trace =
          optimize_aae(target, n_blocks, aae_steps, aae_seed + sample_index);
      const AnsatzTemplate t = build_ansatz(num_qubits(target), n_blocks);
      return apply_circuit(zero_state<double>(t.n_qubits),
                           bind_parameters(t, trace.final_theta));
    }
    case EncoderKind::SUPERENCODER: {
      if (!se_weights) {
        throw std::invalid_argument(
            "QnnEncoder: SuperEncoder weights not loaded for this (n, l)");
      }
      return predict_and_prepare(*se_weights, normalized.cast<Complex>(),
                                 se_weights->n_blocks)
          .state;
    }
    }
    throw std::invalid_argument("QnnEncoder: unknown kind");
  }
};

struct QnnModel {
  EncoderKind encoder = EncoderKind::EXACT_AE;
  int n_qubits = 0;
  int trainable_blocks = 0; // m
  int readout_qubit = 0;
  ParamVector phi; // n * m entries
};

/// score = (1 + <Z_readout>) / 2 applied after the trainable blocks;
/// class is score >= 0.5.
inline std::pair<double, int>
qnn_score_from_encoded(const QnnModel &model, const StateVector &encoded) {
  StateVector state = encoded;
  if (model.trainable_blocks > 0) {
    const AnsatzTemplate t =
        build_ansatz(model.n_qubits, model.trainable_blocks);
    state = apply_circuit(state, bind_parameters(t, model.phi));
  }
  const double z = pauli_z_expectation(state, model.readout_qubit);
  const double score = 0.5 * (1.0 + z);
  return {score, score >= 0.5 ? 1 : 0};
}

/// Encodes the sample with the frozen encoder, then scores it.
inline std::pair<double, int> qnn_predict(const QnnModel &model,
                                          const QnnEncoder &encoder,
                                          const Eigen::VectorXd &sample,
                                          size_t sample_index = 0) {
  return qnn_score_from_encoded(model,
                                encoder.encode(sample, sample_index));
}

struct QnnTrainConfig {
  int trainable_blocks = 3; // m
  int epochs = 40;
  int batch_size = 16;
  double learning_rate = 0.05;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct QnnResult {
  QnnModel model;
  double test_accuracy = 0.0;
  double train_accuracy = 0.0;
  size_t train_count = 0;
  size_t test_count = 0;
};

namespace detail {

inline double clamp_probability(double p) {
  return std::min(1.0 - 1e-12, std::max(1e-12, p));
}

} // namespace detail

/// Trains the m trainable blocks with Adam on binary cross-entropy of the
/// readout score; encoder parameters stay frozen throughout. Gradients of
/// <Z> flow through the adjoint sweep. Returns held-out accuracy on a
/// seeded 80/20 split (class labels must take exactly two values; the
/// larger one maps to class 1).
inline QnnResult train_qnn(const Dataset &dataset, const QnnEncoder &encoder,
                           const QnnTrainConfig &config) {
  if (dataset.samples.empty()) {
    throw std::invalid_argument("train_qnn: empty dataset");
  }
  int lo = 0, hi = 0;
  {
    bool first = true;
    for (const Sample &s : dataset.samples) {
      if (s.label < 0) {
        throw std::invalid_argument("train_qnn: dataset has unlabeled samples");
      }
      if (first) {
        lo = hi = s.label;
        first = false;
      } else {
        lo = std::min(lo, s.label);
        hi = std::max(hi, s.label);
      }
    }
    if (lo == hi) {
      throw std::invalid_argument("train_qnn: single-class dataset");
    }
    for (const Sample &s : dataset.samples) {
      if (s.label != lo && s.label != hi) {
        throw std::invalid_argument("train_qnn: more than two classes");
      }
    }
  }

  const size_t count = dataset.samples.size();
  std::vector<size_t> order(count);
  for (size_t i = 0; i < count; ++i) {
    order[i] = i;
  }
  Rng rng(config.seed);
  for (size_t i = count - 1; i > 0; --i) {
    const size_t j = static_cast<size_t>(uniform01(rng) *
                                         static_cast<double>(i + 1));
    std::swap(order[i], order[std::min(j, i)]);
  }
  const size_t train_count = std::max<size_t>(
      1, static_cast<size_t>(config.train_fraction * static_cast<double>(count)));

  // Frozen encoders: encode every sample once, up front.
  std::vector<StateVector> encoded(count);
  parallel_for(static_cast<std::int64_t>(count), [&](std::int64_t i) {
    encoded[static_cast<size_t>(i)] = encoder.encode(
        dataset.samples[static_cast<size_t>(i)].normalized,
        static_cast<size_t>(i));
  });

  QnnModel model;
  model.encoder = encoder.kind;
  model.n_qubits = dataset.n_qubits;
  model.trainable_blocks = config.trainable_blocks;
  model.readout_qubit = 0;
  const int n_params = dataset.n_qubits * config.trainable_blocks;
  model.phi = ParamVector::Zero(std::max(0, n_params));
  for (Eigen::Index k = 0; k < model.phi.size(); ++k) {
    model.phi[k] = uniform_angle(rng);
  }

  if (config.trainable_blocks > 0) {
    const AnsatzTemplate t =
        build_ansatz(dataset.n_qubits, config.trainable_blocks);
    AdamState adam = AdamState::create(n_params, config.learning_rate);
    std::vector<size_t> train_order(order.begin(),
                                    order.begin() +
                                        static_cast<std::ptrdiff_t>(train_count));
    std::vector<GradientVector> slot(
        static_cast<size_t>(config.batch_size));
    std::vector<double> slot_loss(static_cast<size_t>(config.batch_size));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (size_t i = train_order.size() - 1; i > 0; --i) {
        const size_t j = static_cast<size_t>(uniform01(rng) *
                                             static_cast<double>(i + 1));
        std::swap(train_order[i], train_order[std::min(j, i)]);
      }
      for (size_t begin = 0; begin < train_order.size();
           begin += static_cast<size_t>(config.batch_size)) {
        const size_t end = std::min(train_order.size(),
                                    begin + static_cast<size_t>(config.batch_size));
        const size_t batch_count = end - begin;
        parallel_for(static_cast<std::int64_t>(batch_count),
                     [&](std::int64_t b) {
                       const size_t idx = train_order[begin + static_cast<size_t>(b)];
                       const double y =
                           dataset.samples[idx].label == hi ? 1.0 : 0.0;
                       // d(BCE)/d<Z> = (s - y) / (s (1 - s)) * ds/d<Z>.
                       const StateVector out = apply_circuit(
                           encoded[idx], bind_parameters(t, model.phi));
                       const double z =
                           pauli_z_expectation(out, model.readout_qubit);
                       const double s =
                           detail::clamp_probability(0.5 * (1.0 + z));
                       slot_loss[static_cast<size_t>(b)] =
                           -(y * std::log(s) + (1.0 - y) * std::log(1.0 - s));
                       const double upstream =
                           0.5 * (s - y) / (s * (1.0 - s));
                       const GradientVector z_grad =
                           adjoint_expectation_gradient(
                               t, model.phi, encoded[idx],
                               [&](const StateVector &phi) -> StateVector {
                                 Gate zg = Gate::z(model.readout_qubit);
                                 return apply_gate(phi, zg);
                               });
                       slot[static_cast<size_t>(b)] = upstream * z_grad;
                     });
        GradientVector grad = GradientVector::Zero(n_params);
        for (size_t b = 0; b < batch_count; ++b) {
          grad += slot[b];
        }
        grad /= static_cast<double>(batch_count);
        adam_update_in_place(adam, model.phi, grad);
      }
    }
  }

  auto accuracy_over = [&](size_t begin, size_t end) {
    if (begin == end) {
      return 0.0;
    }
    size_t correct = 0;
    for (size_t i = begin; i < end; ++i) {
      const size_t idx = order[i];
      const auto [score, cls] = qnn_score_from_encoded(model, encoded[idx]);
      const int truth = dataset.samples[idx].label == hi ? 1 : 0;
      correct += (cls == truth) ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(end - begin);
  };

  QnnResult result;
  result.model = std::move(model);
  result.train_count = train_count;
  result.test_count = count - train_count;
  result.train_accuracy = accuracy_over(0, train_count);
  result.test_accuracy = accuracy_over(train_count, count);
  return result;
}

} // namespace qsprep
