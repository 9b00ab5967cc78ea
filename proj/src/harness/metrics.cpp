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

#include "sanm/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sanm/stability.hpp"

namespace sanm::harness {

namespace {

double ratio(double a, double b) {
  if (a == b) return 1.0;
  return a / b;
}

double difference(double a, double b) { return a == b ? 0.0 : a - b; }

}  // namespace

double percentile(std::vector<double> xs, double q) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size()))) ;
  return xs[std::min(xs.size() - 1, idx == 0 ? 0 : idx - 1)];
}

RunMetrics compute_metrics(const SimTrace& trace, double tail_fraction) {
  if (trace.rows.empty()) throw Error(ErrorCode::kShapeMismatch, "empty trace");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::kShapeMismatch, "tail fraction must be in (0, 1]");
  }
  RunMetrics m;
  const std::size_t n = trace.rows.size();
  m.samples = n;
  const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  double sr = 0.0, so = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) {
    sr += trace.rows[i].e_R.squaredNorm();
    so += trace.rows[i].e_Omega.squaredNorm();
  }
  m.rms_e_R = std::sqrt(sr / static_cast<double>(tail));
  m.rms_e_Omega = std::sqrt(so / static_cast<double>(tail));
  const auto z = trace.z_norms();
  m.eps_hat = stability::tail_max(z, tail_fraction);

  m.settling_time = std::numeric_limits<double>::infinity();
  for (std::size_t i = n; i-- > 0;) {
    if (z[i] > kSettlingRadius) break;
    m.settling_time = trace.rows[i].t;
  }
  return m;
}

void attach_latency(RunMetrics& m, const RunStats& stats) {
  if (stats.controller_latency_us.empty()) return;
  const auto& v = stats.controller_latency_us;
  m.mean_latency_us = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  m.p99_latency_us = percentile(v, 0.99);
}

Comparison compare_runs(const SimTrace& on, const SimTrace& off, double tail_fraction) {
  if (on.rows.size() != off.rows.size()) {
    throw Error(ErrorCode::kShapeMismatch, "traces differ in length");
  }
  if (on.rows.size() >= 2 && std::abs(on.dt() - off.dt()) > 1e-12) {
    throw Error(ErrorCode::kShapeMismatch, "traces differ in sample period");
  }
  Comparison c;
  c.on = compute_metrics(on, tail_fraction);
  c.off = compute_metrics(off, tail_fraction);
  c.eps_ratio = ratio(c.on.eps_hat, c.off.eps_hat);
  c.rms_e_R_ratio = ratio(c.on.rms_e_R, c.off.rms_e_R);
  c.rms_e_Omega_ratio = ratio(c.on.rms_e_Omega, c.off.rms_e_Omega);
  c.delta_eps = difference(c.on.eps_hat, c.off.eps_hat);
  c.delta_rms_e_R = difference(c.on.rms_e_R, c.off.rms_e_R);
  c.delta_rms_e_Omega = difference(c.on.rms_e_Omega, c.off.rms_e_Omega);
  c.delta_settling = difference(c.on.settling_time, c.off.settling_time);
  return c;
}

}  // namespace sanm::harness
