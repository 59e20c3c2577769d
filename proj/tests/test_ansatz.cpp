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

#include "qsprep/ansatz.hpp"

#include "oracles.hpp"
#include "qsprep/sim.hpp"

#include <doctest.h>

#include <numbers>
#include <set>

using namespace qsprep;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("4-qubit 2-block template: slots, depth, entangler pattern") {
  const AnsatzTemplate t = build_ansatz(4, 2);
  CHECK(t.slot_count() == 8);
  const Circuit c = bind_parameters(t, ParamVector::Zero(8));
  CHECK(circuit_depth(c) == 6);
  // Per block: pairs {(0,1),(2,3)} then {(1,2)} -> 3 CNOTs, 6 in total.
  CHECK(cnot_count(c) == 6);
  std::vector<std::pair<int, int>> pairs;
  for (const Gate &g : c.gates) {
    if (g.kind == GateKind::CNOT) {
      pairs.emplace_back(g.control, g.target);
    }
  }
  const std::vector<std::pair<int, int>> expected = {
      {0, 1}, {2, 3}, {1, 2}, {0, 1}, {2, 3}, {1, 2}};
  CHECK(pairs == expected);
}

TEST_CASE("paper block-count settings give the documented shapes") {
  const AnsatzTemplate t48 = build_ansatz(4, 8);
  CHECK(t48.slot_count() == 32);
  CHECK(circuit_depth(bind_parameters(t48, ParamVector::Zero(32))) == 24);
  const AnsatzTemplate t620 = build_ansatz(6, 20);
  CHECK(t620.slot_count() == 120);
  CHECK(circuit_depth(bind_parameters(t620, ParamVector::Zero(120))) == 60);
}

TEST_CASE("slot/depth/CNOT-count formulas hold for n in [2,8], l in [1,8]") {
  for (int n = 2; n <= 8; ++n) {
    for (int l = 1; l <= 8; ++l) {
      const AnsatzTemplate t = build_ansatz(n, l);
      CHECK(t.slot_count() == n * l);
      const Circuit c =
          bind_parameters(t, ParamVector::Zero(t.slot_count()));
      CHECK(ansatz_depth(t) == 3 * l);
      if (n >= 3) { // at n=2 the odd CNOT sub-layer is empty
        CHECK(circuit_depth(c) == 3 * l);
      }
      CHECK(cnot_count(c) == l * (n / 2 + (n - 1) / 2));
      // Slot indices form a permutation of [0, n*l).
      std::set<int> slots;
      for (const Gate &g : t.gates) {
        if (!g.is_bound()) {
          slots.insert(g.slot);
        }
      }
      CHECK(static_cast<int>(slots.size()) == n * l);
      CHECK(*slots.begin() == 0);
      CHECK(*slots.rbegin() == n * l - 1);
      // Entangler touches adjacent qubits only.
      for (const Gate &g : c.gates) {
        if (g.kind == GateKind::CNOT) {
          CHECK(g.target - g.control == 1);
        }
      }
    }
  }
}

TEST_CASE("all-zero parameters prepare |0...0>") {
  const AnsatzTemplate t = build_ansatz(4, 2);
  const StateVector out = apply_circuit(zero_state<double>(4),
                                        bind_parameters(t, ParamVector::Zero(8)));
  CHECK(std::abs(out[0] - Complex{1, 0}) < 1e-14);
  // Cross-check against the dense matrix product.
  const StateVector oracle = testing::apply_circuit_oracle(
      zero_state<double>(4), bind_parameters(t, ParamVector::Zero(8)));
  CHECK((out - oracle).norm() < 1e-12);
}

TEST_CASE("one nonzero angle yields exactly one non-identity rotation") {
  const AnsatzTemplate t = build_ansatz(4, 2);
  ParamVector theta = ParamVector::Zero(8);
  theta[5] = 0.37;
  const Circuit c = bind_parameters(t, theta);
  int nontrivial = 0;
  for (const Gate &g : c.gates) {
    if (g.is_rotation() && g.angle != 0.0) {
      ++nontrivial;
    }
  }
  CHECK(nontrivial == 1);
}

TEST_CASE("bind then extract round-trips canonical parameters") {
  const AnsatzTemplate t = build_ansatz(5, 3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pick(-kPi + 1e-6, kPi);
  ParamVector theta(t.slot_count());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta[i] = pick(rng);
  }
  const ParamVector back = extract_parameters(t, bind_parameters(t, theta));
  CHECK((back - theta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("real parameters keep every amplitude real") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> pick(-kPi, kPi);
  for (int n = 2; n <= 6; ++n) {
    const AnsatzTemplate t = build_ansatz(n, 3);
    ParamVector theta(t.slot_count());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      theta[i] = pick(rng);
    }
    const StateVector out = apply_circuit(zero_state<double>(n),
                                          bind_parameters(t, theta));
    CHECK(out.imag().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("odd qubit counts leave the unpaired qubit idle") {
  const AnsatzTemplate t = build_ansatz(5, 1);
  const Circuit c = bind_parameters(t, ParamVector::Zero(5));
  // floor(5/2) + floor(4/2) = 2 + 2 CNOTs.
  CHECK(cnot_count(c) == 4);
  CHECK(circuit_depth(c) == 3);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(build_ansatz(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_ansatz(4, 0), std::invalid_argument);
  const AnsatzTemplate t = build_ansatz(4, 2);
  CHECK_THROWS_AS(bind_parameters(t, ParamVector::Zero(7)),
                  std::invalid_argument);
}

TEST_CASE("canonical_angle wraps into (-pi, pi]") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(canonical_angle(kPi) == doctest::Approx(kPi));
  CHECK(canonical_angle(-kPi) == doctest::Approx(kPi));
  CHECK(canonical_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(canonical_angle(2 * kPi + 0.25) == doctest::Approx(0.25));
  CHECK(canonical_angle(-2 * kPi - 0.25) == doctest::Approx(-0.25));
  ParamVector v(2);
  v << 5 * kPi / 2, -5 * kPi / 2;
  const ParamVector c = canonicalize(v);
  CHECK(c[0] == doctest::Approx(kPi / 2));
  CHECK(c[1] == doctest::Approx(-kPi / 2));
}
