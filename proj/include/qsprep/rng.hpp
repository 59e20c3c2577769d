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
// Seeded samplers with fixed algorithms. std::*_distribution is
// implementation-defined, so every draw here is spelled out explicitly to
// keep run manifests reproducible across standard libraries.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qsprep {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [lo, hi).
inline double uniform(Rng &rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform angle in the canonical range (-pi, pi].
inline double uniform_angle(Rng &rng) {
  return std::numbers::pi * (1.0 - 2.0 * uniform01(rng));
}

/// Standard normal via Box-Muller; consumes two uniforms per pair.
class NormalSampler {
public:
  double operator()(Rng &rng) {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // 1 - u in (0, 1] keeps the log argument away from zero.
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform01(rng)));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    cached_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
  }

private:
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Exponential(1) by inversion.
inline double exponential1(Rng &rng) { return -std::log(1.0 - uniform01(rng)); }

} // namespace qsprep
