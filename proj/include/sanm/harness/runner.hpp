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
#include <vector>

#include "sanm/harness/config.hpp"
#include "sanm/harness/trace.hpp"

namespace sanm::harness {

struct RunStats {
  std::size_t steps = 0;
  std::size_t infeasible_steps = 0;
  std::size_t clamped_steps = 0;
  std::vector<double> controller_latency_us;  // filled only when timing is requested
};

/// Deterministic closed-loop run: identical config and seed give a
/// bit-identical trace. Throws Error(kInvalidConfig) on a bad config.
SimTrace run_scenario(const SimConfig& config, RunStats* stats = nullptr, bool time_controller = false);

/// Disturbance actually applied by the plant (random phases resolved).
sim::DisturbanceModel resolved_disturbance(const SimConfig& config);

}  // namespace sanm::harness
