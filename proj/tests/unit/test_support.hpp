// Copyright 2026 The SANM Attitude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "sanm/so3.hpp"

namespace sanm::testing {

inline constexpr double kPi = std::numbers::pi;

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Vec3 vec(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  Vec3 unit() {
    std::normal_distribution<double> n;
    Vec3 v(n(rng_), n(rng_), n(rng_));
    return v.normalized();
  }
  // Angle strictly below pi so log() stays on its regular branch.
  so3::RotationMatrix rotation(double max_angle = 3.0) { return so3::exp(unit() * uniform(0.0, max_angle)); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double frob(const Mat3& a, const Mat3& b) { return (a - b).norm(); }

}  // namespace sanm::testing
