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

#include <cstddef>
#include <cstdint>

#include "sanm/harness/config.hpp"

namespace sanm::harness {

inline constexpr std::size_t kMinBenchIterations = 10000;

struct BenchStats {
  std::size_t iterations = 0;
  double mean_us = 0.0;
  double p99_us = 0.0;
  double max_us = 0.0;
  int neurons = 0;
  std::uint64_t gaussian_evals = 0;
  double gaussian_evals_per_step = 0.0;
  bool eval_count_ok = false;  // exactly 3 l per step
};

/// Times one controller + SANM step (errors, adaptation, moment, mixing)
/// without the plant. Throws Error(kInvalidConfig) below kMinBenchIterations.
BenchStats bench_step(const SimConfig& config, std::size_t iterations);

}  // namespace sanm::harness
