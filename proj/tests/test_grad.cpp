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

#include "qsprep/grad.hpp"

#include "oracles.hpp"
#include "qsprep/sim.hpp"

#include <doctest.h>

#include <numbers>

using namespace qsprep;

namespace {
constexpr double kPi = std::numbers::pi;

/// Minimal single-RY template for closed-form checks: one slot on qubit 0
/// of a 2-qubit register (entangler idles on |00>-target problems).
AnsatzTemplate single_ry_template() {
  AnsatzTemplate t;
  t.n_qubits = 1;
  t.n_blocks = 1;
  t.gates.push_back(Gate::ry_slot(0, 0));
  return t;
}

ParamVector random_theta(std::mt19937_64 &rng, int count) {
  std::uniform_real_distribution<double> pick(-kPi, kPi);
  ParamVector theta(count);
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta[i] = pick(rng);
  }
  return theta;
}
} // namespace

TEST_CASE("single RY against |0>: shift rule equals -sin(theta)/2") {
  const AnsatzTemplate t = single_ry_template();
  const StateVector target = zero_state<double>(1);
  ParamVector theta(1);
  theta << kPi / 2;
  const GradientVector g = param_shift_gradient(t, theta, target);
  CHECK(g[0] == doctest::Approx(-0.5).epsilon(1e-12));
  for (double angle : {-2.5, -1.0, 0.0, 0.3, 1.9}) {
    theta[0] = angle;
    CHECK(param_shift_gradient(t, theta, target)[0] ==
          doctest::Approx(-std::sin(angle) / 2).epsilon(1e-11));
    CHECK(adjoint_gradient(t, theta, target)[0] ==
          doctest::Approx(-std::sin(angle) / 2).epsilon(1e-11));
    CHECK(finite_diff_gradient(t, theta, target, 1e-5)[0] ==
          doctest::Approx(-std::sin(angle) / 2).epsilon(1e-6));
  }
}

TEST_CASE("gradient vanishes at an exactly-prepared target") {
  std::mt19937_64 rng(61);
  const AnsatzTemplate t = build_ansatz(4, 2);
  const ParamVector theta = random_theta(rng, t.slot_count());
  const StateVector target =
      apply_circuit(zero_state<double>(4), bind_parameters(t, theta));
  CHECK(param_shift_gradient(t, theta, target).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(adjoint_gradient(t, theta, target).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(finite_diff_gradient(t, theta, target, 1e-5).cwiseAbs().maxCoeff() <
        1e-7);
}

TEST_CASE("all-zero parameters against |0...0> sit at the optimum") {
  const AnsatzTemplate t = build_ansatz(4, 2);
  const GradientVector g =
      adjoint_gradient(t, ParamVector::Zero(8), zero_state<double>(4));
  CHECK(g.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("shift rule matches finite differences on a random (4,2) ansatz") {
  std::mt19937_64 rng(1234);
  const AnsatzTemplate t = build_ansatz(4, 2);
  const ParamVector theta = random_theta(rng, t.slot_count());
  const StateVector target =
      testing::random_real_unit(rng, 16).cast<Complex>();
  const GradientVector shift = param_shift_gradient(t, theta, target);
  const GradientVector fd = finite_diff_gradient(t, theta, target, 1e-5);
  CHECK((shift - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("adjoint agrees with the shift rule on 100 random instances") {
  std::mt19937_64 rng(8888);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5); // 2..6 qubits
    const int l = 1 + static_cast<int>(rng() % 4);
    const AnsatzTemplate t = build_ansatz(n, l);
    const ParamVector theta = random_theta(rng, t.slot_count());
    const StateVector target =
        testing::random_real_unit(rng, Eigen::Index{1} << n).cast<Complex>();
    const GradientVector adj = adjoint_gradient(t, theta, target);
    const GradientVector shift = param_shift_gradient(t, theta, target);
    worst = std::max(worst, (adj - shift).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("adjoint handles complex targets and RZ rotations") {
  // A template with an RZ slot exercises the Z generator path.
  AnsatzTemplate t;
  t.n_qubits = 2;
  t.n_blocks = 1;
  t.gates.push_back(Gate::ry_slot(0, 0));
  t.gates.push_back(Gate::rz_slot(1, 1));
  t.gates.push_back(Gate::cnot(0, 1));
  std::mt19937_64 rng(404);
  const ParamVector theta = random_theta(rng, 2);
  const StateVector target = testing::random_complex_state(rng, 4);
  const GradientVector adj = adjoint_gradient(t, theta, target);
  const GradientVector shift = param_shift_gradient(t, theta, target);
  const GradientVector fd = finite_diff_gradient(t, theta, target, 1e-5);
  CHECK((adj - shift).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((adj - fd).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fidelity gradients stay bounded by 1") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const AnsatzTemplate t = build_ansatz(3, 3);
    const ParamVector theta = random_theta(rng, t.slot_count());
    const StateVector target =
        testing::random_real_unit(rng, 8).cast<Complex>();
    CHECK(adjoint_gradient(t, theta, target).cwiseAbs().maxCoeff() <= 1.0);
  }
}

TEST_CASE("evaluation-order independence of the shift rule") {
  // Same instance evaluated with different worker counts must match
  // bit for bit; entries are written to independent slots.
  std::mt19937_64 rng(9);
  const AnsatzTemplate t = build_ansatz(4, 3);
  const ParamVector theta = random_theta(rng, t.slot_count());
  const StateVector target =
      testing::random_real_unit(rng, 16).cast<Complex>();
  const GradientVector a = param_shift_gradient(t, theta, target);
  const GradientVector b = param_shift_gradient(t, theta, target);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("finite difference epsilon bounds") {
  const AnsatzTemplate t = single_ry_template();
  ParamVector theta(1);
  theta << 0.5;
  CHECK_THROWS_AS(
      finite_diff_gradient(t, theta, zero_state<double>(1), 1e-8),
      std::invalid_argument);
  CHECK_THROWS_AS(
      finite_diff_gradient(t, theta, zero_state<double>(1), 1e-2),
      std::invalid_argument);
}

TEST_CASE("length mismatches throw") {
  const AnsatzTemplate t = build_ansatz(4, 2);
  CHECK_THROWS_AS(
      param_shift_gradient(t, ParamVector::Zero(5), zero_state<double>(4)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      adjoint_gradient(t, ParamVector::Zero(8), zero_state<double>(3)),
      std::invalid_argument);
}
