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
// SuperEncoder: the MLP surrogate mapping target states directly to ansatz
// angles, trained end to end through the simulator. The loss gradient flows
// through the circuit by the adjoint sweep (dLoss/dTheta) and then through
// the network by ordinary backpropagation (dTheta/dW).
#pragma once

#include "qsprep/aae.hpp"
#include "qsprep/adam.hpp"
#include "qsprep/ansatz.hpp"
#include "qsprep/data.hpp"
#include "qsprep/grad.hpp"
#include "qsprep/losses.hpp"
#include "qsprep/mlp.hpp"
#include "qsprep/threading.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

namespace qsprep {

struct TrainConfig {
  int epochs = 10;
  int batch_size = 0; // 0 -> 32 for n <= 4, 64 above
  double learning_rate = 3e-3;
  double weight_decay = 1e-5;
  std::uint64_t seed = 0;
  int hidden_width = kDefaultHiddenWidth;
  LossKind loss = LossKind::L3_INFIDELITY;

  int resolved_batch_size(int n_qubits) const {
    if (batch_size > 0) {
      return batch_size;
    }
    return n_qubits <= 4 ? 32 : 64;
  }
};

struct TrainLog {
  std::vector<double> epoch_mean_loss;
};

namespace detail {

struct SampleGradient {
  Eigen::VectorXd flat;
  double loss = 0.0;
};

/// Loss and flat weight gradient for one sample. For the state-oriented
/// losses the upstream dLoss/dTheta comes out of the circuit sweep; for L1
/// it is the plain MSE derivative against the reference angles.
inline SampleGradient sample_gradient(const MlpWeights &w,
                                      const AnsatzTemplate &t,
                                      const Eigen::VectorXd &input,
                                      const StateVector &target,
                                      const ParamVector *reference_theta,
                                      LossKind loss) {
  MlpCache cache;
  const ParamVector theta = mlp_forward(w, input, &cache);
  const StateVector init = zero_state<double>(t.n_qubits);

  SampleGradient result;
  Eigen::VectorXd upstream;
  switch (loss) {
  case LossKind::L1_PARAM_MSE: {
    if (reference_theta == nullptr) {
      throw std::invalid_argument(
          "train_superencoder: L1 requires reference angles per sample");
    }
    const ParamVector reference = canonicalize(*reference_theta);
    result.loss = loss_l1(theta, reference);
    // theta is already inside (-pi, pi), so canonicalization is identity
    // on the predicted side.
    upstream = (2.0 / static_cast<double>(theta.size())) * (theta - reference);
    break;
  }
  case LossKind::L2_STATE_MSE: {
    const StateVector prepared = apply_circuit(init, bind_parameters(t, theta));
    result.loss = loss_l2(prepared, target);
    const StateVector residual = ((2.0 / static_cast<double>(target.size())) *
                                  (prepared.real() - target.real()))
                                     .cast<Complex>();
    upstream = adjoint_overlap_gradient(t, theta, init, residual);
    break;
  }
  case LossKind::L3_INFIDELITY: {
    const StateVector prepared = apply_circuit(init, bind_parameters(t, theta));
    result.loss = loss_l3(prepared, target);
    upstream = -adjoint_gradient(t, theta, target);
    break;
  }
  }
  const MlpGrads grads = mlp_backward(w, cache, upstream);
  result.flat = grads.to_vector();
  return result;
}

} // namespace detail

/// Trains (or fine-tunes, when warm_start is given) the MLP on a dataset of
/// normalized target vectors. reference_thetas is required for L1 and must
/// align index-for-index with the dataset. Deterministic per config seed.
inline std::pair<MlpWeights, TrainLog>
train_superencoder(const Dataset &dataset, int n_blocks,
                   const TrainConfig &config,
                   const std::vector<ParamVector> *reference_thetas = nullptr,
                   const MlpWeights *warm_start = nullptr) {
  if (dataset.samples.empty()) {
    throw std::invalid_argument("train_superencoder: empty dataset");
  }
  if (config.loss == LossKind::L1_PARAM_MSE &&
      (reference_thetas == nullptr ||
       reference_thetas->size() != dataset.samples.size())) {
    throw std::invalid_argument("train_superencoder: L1 needs one reference "
                                "angle vector per sample");
  }
  const int n_qubits = dataset.n_qubits;
  const AnsatzTemplate t = build_ansatz(n_qubits, n_blocks);

  MlpWeights weights;
  if (warm_start != nullptr) {
    if (warm_start->n_qubits != n_qubits || warm_start->n_blocks != n_blocks) {
      throw std::invalid_argument(
          "train_superencoder: warm-start weights shaped for different (n, l)");
    }
    weights = *warm_start;
  } else {
    weights = init_mlp(n_qubits, n_blocks, config.hidden_width, config.seed);
  }

  const int batch = config.resolved_batch_size(n_qubits);
  const size_t count = dataset.samples.size();
  std::vector<size_t> order(count);
  for (size_t i = 0; i < count; ++i) {
    order[i] = i;
  }

  AdamState adam = AdamState::create(weights.parameter_count(),
                                     config.learning_rate,
                                     config.weight_decay);
  Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ull);
  TrainLog log;
  std::vector<detail::SampleGradient> slot(static_cast<size_t>(batch));

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    // Fisher-Yates with explicit draws so the permutation is seed-stable.
    for (size_t i = count - 1; i > 0; --i) {
      const size_t j = static_cast<size_t>(uniform01(shuffle_rng) *
                                           static_cast<double>(i + 1));
      std::swap(order[i], order[std::min(j, i)]);
    }
    double loss_sum = 0.0;
    for (size_t begin = 0; begin < count; begin += static_cast<size_t>(batch)) {
      const size_t end = std::min(count, begin + static_cast<size_t>(batch));
      const size_t batch_count = end - begin;
      parallel_for(static_cast<std::int64_t>(batch_count),
                   [&](std::int64_t b) {
                     const size_t idx = order[begin + static_cast<size_t>(b)];
                     const Sample &s = dataset.samples[idx];
                     const ParamVector *reference =
                         reference_thetas ? &(*reference_thetas)[idx] : nullptr;
                     slot[static_cast<size_t>(b)] = detail::sample_gradient(
                         weights, t, s.normalized, dataset.state(idx),
                         reference, config.loss);
                   });
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(weights.parameter_count());
      for (size_t b = 0; b < batch_count; ++b) { // fixed reduction order
        grad += slot[b].flat;
        loss_sum += slot[b].loss;
      }
      grad /= static_cast<double>(batch_count);
      if (!std::isfinite(loss_sum)) {
        throw std::runtime_error(
            "train_superencoder: loss became NaN/Inf at epoch " +
            std::to_string(epoch));
      }
      Eigen::VectorXd flat = weights.to_vector();
      adam_update_in_place(adam, flat, grad);
      weights.from_vector(flat);
    }
    log.epoch_mean_loss.push_back(loss_sum / static_cast<double>(count));
  }
  return {std::move(weights), std::move(log)};
}

struct Prediction {
  ParamVector theta;
  StateVector state;
  double fidelity = 0.0;
  double seconds = 0.0;
};

/// Single forward pass plus one simulation; no iteration. Inference is
/// stateless, so identical calls return identical angles.
inline Prediction predict_and_prepare(const MlpWeights &w,
                                      const StateVector &target,
                                      int n_blocks) {
  if (n_blocks != w.n_blocks) {
    throw std::invalid_argument("predict_and_prepare: weights trained for " +
                                std::to_string(w.n_blocks) + " blocks, got " +
                                std::to_string(n_blocks));
  }
  if (target.size() != w.input_dim()) {
    throw std::invalid_argument("predict_and_prepare: target dimension "
                                "mismatch");
  }
  const auto start = std::chrono::steady_clock::now();
  const AnsatzTemplate t = build_ansatz(w.n_qubits, w.n_blocks);
  Prediction p;
  p.theta = mlp_forward(w, target.real());
  p.state = apply_circuit(zero_state<double>(w.n_qubits),
                          bind_parameters(t, p.theta));
  p.fidelity = fidelity_pure(p.state, target);
  p.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return p;
}

/// Mean fidelity of predictions over a dataset.
inline double mean_fidelity(const MlpWeights &w, const Dataset &dataset) {
  if (dataset.samples.empty()) {
    throw std::invalid_argument("mean_fidelity: empty dataset");
  }
  std::vector<double> fidelities(dataset.samples.size());
  parallel_for(static_cast<std::int64_t>(dataset.samples.size()),
               [&](std::int64_t i) {
                 fidelities[static_cast<size_t>(i)] =
                     predict_and_prepare(w, dataset.state(static_cast<size_t>(i)),
                                         w.n_blocks)
                         .fidelity;
               });
  double sum = 0.0;
  for (double f : fidelities) {
    sum += f;
  }
  return sum / static_cast<double>(fidelities.size());
}

inline constexpr int kWeightsFormatVersion = 1;

/// Model document: format_version, (n_qubits, n_blocks, hidden_width, seed)
/// and row-major f64 arrays w1, b1, w2, b2.
inline nlohmann::json weights_to_json(const MlpWeights &w) {
  auto matrix_rows = [](const Eigen::MatrixXd &m) {
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        flat.push_back(m(r, c));
      }
    }
    return flat;
  };
  nlohmann::json j;
  j["format_version"] = kWeightsFormatVersion;
  j["n_qubits"] = w.n_qubits;
  j["n_blocks"] = w.n_blocks;
  j["hidden_width"] = w.hidden_width();
  j["seed"] = w.seed;
  j["w1"] = matrix_rows(w.w1);
  j["b1"] = std::vector<double>(w.b1.data(), w.b1.data() + w.b1.size());
  j["w2"] = matrix_rows(w.w2);
  j["b2"] = std::vector<double>(w.b2.data(), w.b2.data() + w.b2.size());
  return j;
}

inline MlpWeights weights_from_json(const nlohmann::json &j) {
  for (const char *key :
       {"format_version", "n_qubits", "n_blocks", "hidden_width", "seed", "w1",
        "b1", "w2", "b2"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("weights document missing '") +
                                  key + "'");
    }
  }
  if (j.at("format_version").get<int>() != kWeightsFormatVersion) {
    throw std::invalid_argument("unsupported weights format_version");
  }
  MlpWeights w;
  w.n_qubits = j.at("n_qubits").get<int>();
  w.n_blocks = j.at("n_blocks").get<int>();
  w.seed = j.at("seed").get<std::uint64_t>();
  const int hidden = j.at("hidden_width").get<int>();
  if (w.n_qubits < 1 || w.n_blocks < 1 || hidden < 1) {
    throw std::invalid_argument("weights document has non-positive shapes");
  }
  const Eigen::Index input = Eigen::Index{1} << w.n_qubits;
  const Eigen::Index output = Eigen::Index{w.n_qubits} * w.n_blocks;
  auto fill_matrix = [&](const char *key, Eigen::Index rows,
                         Eigen::Index cols) {
    const auto values = j.at(key).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != rows * cols) {
      throw std::invalid_argument(std::string("weights array '") + key +
                                  "' has wrong length");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        m(r, c) = values[static_cast<size_t>(r * cols + c)];
      }
    }
    return m;
  };
  w.w1 = fill_matrix("w1", hidden, input);
  w.b1 = fill_matrix("b1", hidden, 1);
  w.w2 = fill_matrix("w2", output, hidden);
  w.b2 = fill_matrix("b2", output, 1);
  return w;
}

inline void save_weights(const std::filesystem::path &path,
                         const MlpWeights &w) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << weights_to_json(w).dump(1) << "\n";
}

inline MlpWeights load_weights(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument("weights file " + path.string() +
                                " is not valid JSON: " + e.what());
  }
  return weights_from_json(j);
}

} // namespace qsprep
