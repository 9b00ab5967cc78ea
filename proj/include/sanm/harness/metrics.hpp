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

#include <optional>

#include "sanm/harness/runner.hpp"
#include "sanm/harness/trace.hpp"

namespace sanm::harness {

inline constexpr double kDefaultTailFraction = 0.25;
inline constexpr double kSettlingRadius = 0.05;

struct RunMetrics {
  double rms_e_R = 0.0;      // over the tail window
  double rms_e_Omega = 0.0;
  double settling_time = 0.0;  // +inf if |z| never stays within kSettlingRadius
  double eps_hat = 0.0;
  std::size_t samples = 0;
  std::optional<double> mean_latency_us;
  std::optional<double> p99_latency_us;
};

RunMetrics compute_metrics(const SimTrace& trace, double tail_fraction = kDefaultTailFraction);
void attach_latency(RunMetrics& m, const RunStats& stats);

struct Comparison {
  RunMetrics on;
  RunMetrics off;
  double eps_ratio = 1.0;  // on / off; 1 when both vanish
  double rms_e_R_ratio = 1.0;
  double rms_e_Omega_ratio = 1.0;
  double delta_eps = 0.0;  // on - off
  double delta_rms_e_R = 0.0;
  double delta_rms_e_Omega = 0.0;
  double delta_settling = 0.0;
};

/// Throws Error(kShapeMismatch) unless both traces share sample count and dt.
Comparison compare_runs(const SimTrace& on, const SimTrace& off,
                        double tail_fraction = kDefaultTailFraction);

double percentile(std::vector<double> xs, double q);

}  // namespace sanm::harness
