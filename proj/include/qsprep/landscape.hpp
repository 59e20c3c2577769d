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
// 2-D loss-landscape slices in MLP weight space. Directions are Gaussian
// draws rescaled per output neuron (the affine row, weight plus bias) to
// match the model's row norms, the dense-layer analogue of filter
// normalization.
#pragma once

#include "qsprep/losses.hpp"
#include "qsprep/mlp.hpp"
#include "qsprep/superencoder.hpp"
#include "qsprep/threading.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>

namespace qsprep {

struct LandscapeGrid {
  double half_range = 1.0;
  int resolution = 25;
  LossKind loss = LossKind::L3_INFIDELITY;
  std::uint64_t seed = 0;
  Eigen::VectorXd alphas;  // row axis
  Eigen::VectorXd betas;   // column axis
  Eigen::MatrixXd values;  // resolution x resolution mean losses

  double center() const {
    return values(resolution / 2, resolution / 2);
  }
  double min_value() const { return values.minCoeff(); }
};

namespace detail {

/// Rescales each affine row of (w, b) in `direction` to the corresponding
/// row norm of the model; zero-norm rows get a zero direction.
inline void normalize_rows(Eigen::MatrixXd &dw, Eigen::VectorXd &db,
                           const Eigen::MatrixXd &w, const Eigen::VectorXd &b) {
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    const double model_norm = std::sqrt(w.row(r).squaredNorm() + b[r] * b[r]);
    const double dir_norm =
        std::sqrt(dw.row(r).squaredNorm() + db[r] * db[r]);
    if (model_norm == 0.0 || dir_norm == 0.0) {
      dw.row(r).setZero();
      db[r] = 0.0;
      continue;
    }
    const double scale = model_norm / dir_norm;
    dw.row(r) *= scale;
    db[r] *= scale;
  }
}

inline MlpWeights gaussian_like(const MlpWeights &w, Rng &rng,
                                NormalSampler &normal) {
  MlpWeights d = w;
  for (Eigen::Index r = 0; r < d.w1.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.w1.cols(); ++c) {
      d.w1(r, c) = normal(rng);
    }
  }
  for (Eigen::Index r = 0; r < d.b1.size(); ++r) {
    d.b1[r] = normal(rng);
  }
  for (Eigen::Index r = 0; r < d.w2.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.w2.cols(); ++c) {
      d.w2(r, c) = normal(rng);
    }
  }
  for (Eigen::Index r = 0; r < d.b2.size(); ++r) {
    d.b2[r] = normal(rng);
  }
  return d;
}

} // namespace detail

/// Two independent filter-normalized random directions; deterministic per
/// seed.
inline std::pair<MlpWeights, MlpWeights> make_directions(const MlpWeights &w,
                                                         std::uint64_t seed) {
  Rng rng(seed);
  NormalSampler normal;
  MlpWeights delta = detail::gaussian_like(w, rng, normal);
  MlpWeights eta = detail::gaussian_like(w, rng, normal);
  detail::normalize_rows(delta.w1, delta.b1, w.w1, w.b1);
  detail::normalize_rows(delta.w2, delta.b2, w.w2, w.b2);
  detail::normalize_rows(eta.w1, eta.b1, w.w1, w.b1);
  detail::normalize_rows(eta.w2, eta.b2, w.w2, w.b2);
  return {std::move(delta), std::move(eta)};
}

/// Mean loss of `w` over the dataset, the quantity the grid samples.
inline double mean_loss(const MlpWeights &w, LossKind loss,
                        const Dataset &dataset,
                        const std::vector<ParamVector> *reference_thetas) {
  if (dataset.samples.empty()) {
    throw std::invalid_argument("mean_loss: empty dataset");
  }
  if (loss == LossKind::L1_PARAM_MSE &&
      (reference_thetas == nullptr ||
       reference_thetas->size() != dataset.samples.size())) {
    throw std::invalid_argument("mean_loss: L1 needs reference angles");
  }
  const AnsatzTemplate t = build_ansatz(w.n_qubits, w.n_blocks);
  const StateVector init = zero_state<double>(w.n_qubits);
  double sum = 0.0;
  for (size_t i = 0; i < dataset.samples.size(); ++i) {
    const ParamVector theta = mlp_forward(w, dataset.samples[i].normalized);
    if (loss == LossKind::L1_PARAM_MSE) {
      sum += loss_l1(theta, (*reference_thetas)[i]);
    } else {
      const StateVector prepared =
          apply_circuit(init, bind_parameters(t, theta));
      sum += (loss == LossKind::L2_STATE_MSE)
                 ? loss_l2(prepared, dataset.state(i))
                 : loss_l3(prepared, dataset.state(i));
    }
  }
  return sum / static_cast<double>(dataset.samples.size());
}

/// Cell (i, j) holds the mean loss at w + alpha_i * delta + beta_j * eta.
/// Resolution must be odd so the center cell sits exactly at (0, 0).
inline LandscapeGrid evaluate_grid(
    const MlpWeights &w, const MlpWeights &delta, const MlpWeights &eta,
    LossKind loss, const Dataset &dataset, double half_range, int resolution,
    const std::vector<ParamVector> *reference_thetas = nullptr) {
  if (resolution < 1 || resolution % 2 == 0) {
    throw std::invalid_argument("evaluate_grid: resolution must be odd");
  }
  LandscapeGrid grid;
  grid.half_range = half_range;
  grid.resolution = resolution;
  grid.loss = loss;
  grid.alphas.resize(resolution);
  grid.betas.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    grid.alphas[i] = resolution == 1
                         ? 0.0
                         : half_range * (2.0 * i - (resolution - 1)) /
                               (resolution - 1);
    grid.betas[i] = grid.alphas[i];
  }
  grid.values.resize(resolution, resolution);
  const Eigen::VectorXd base = w.to_vector();
  const Eigen::VectorXd dv = delta.to_vector();
  const Eigen::VectorXd ev = eta.to_vector();
  parallel_for(static_cast<std::int64_t>(resolution) * resolution,
               [&](std::int64_t cell) {
                 const int i = static_cast<int>(cell / resolution);
                 const int j = static_cast<int>(cell % resolution);
                 MlpWeights shifted = w;
                 shifted.from_vector(base + grid.alphas[i] * dv +
                                     grid.betas[j] * ev);
                 grid.values(i, j) =
                     mean_loss(shifted, loss, dataset, reference_thetas);
               });
  return grid;
}

/// CSV layout: header row of beta values, first column alpha values, body
/// loss values.
inline void write_landscape_csv(const std::filesystem::path &path,
                                const LandscapeGrid &grid) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << std::setprecision(17);
  out << "alpha/beta";
  for (int j = 0; j < grid.resolution; ++j) {
    out << "," << grid.betas[j];
  }
  out << "\n";
  for (int i = 0; i < grid.resolution; ++i) {
    out << grid.alphas[i];
    for (int j = 0; j < grid.resolution; ++j) {
      out << "," << grid.values(i, j);
    }
    out << "\n";
  }
}

} // namespace qsprep
