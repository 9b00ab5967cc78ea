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

#include "sanm/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

#include "sanm/allocation.hpp"
#include "sanm/harness/metrics.hpp"

namespace sanm::harness {

BenchStats bench_step(const SimConfig& config, std::size_t iterations) {
  if (iterations < kMinBenchIterations) {
    throw Error(ErrorCode::kInvalidConfig, "bench needs at least 10000 iterations");
  }
  config.validate();
  const auto& gains = config.controller.gains;
  const double dt = config.run.dt;

  // Deterministic synthetic attitude/rate sequence so every branch of the
  // inertia law is exercised.
  std::vector<sim::RigidBodyState> states(256);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double a = 0.05 * static_cast<double>(i);
    states[i].R = so3::exp(Vec3(0.3 * std::sin(a), 0.2 * std::cos(1.3 * a), 0.1 * std::sin(0.7 * a)));
    states[i].Omega = Vec3(2.0 * std::cos(a), -1.5 * std::sin(0.9 * a), 0.5 * std::cos(1.7 * a));
  }

  adapt::SanmState sanm = config.controller.sanm_init;
  Vec3 M_d_prev = Vec3::Zero();
  std::vector<double> lat(iterations);
  Vec3 sink = Vec3::Zero();

  adapt::reset_gaussian_eval_count();
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto& st = states[it % states.size()];
    const double t = static_cast<double>(it) * dt;
    const auto t0 = std::chrono::steady_clock::now();
    const control::AttitudeCommand cmd = control::desired_rates(config.trajectory, t, dt);
    const Vec3 e_R = so3::attitude_error(st.R, cmd.Rd);
    const Vec3 e_Omega = so3::angular_velocity_error(st.Omega, st.R, cmd.Rd, cmd.Omega_d);
    adapt::SanmOutput out = adapt::sanm_step(sanm, e_R, e_Omega, M_d_prev, gains.c_R, dt);
    const Vec3 M_d = control::compute_moment(e_R, e_Omega, st, cmd, gains, out.J_bar, out.phi_bar,
                                             config.plant.J, config.plant.scenario);
    const auto alloc = sim::actual_moment(config.plant.allocation, M_d, config.trajectory.hover_force.norm());
    const auto t1 = std::chrono::steady_clock::now();
    sanm = std::move(out.next);
    M_d_prev = M_d;
    sink += alloc.M;
    lat[it] = std::chrono::duration<double, std::micro>(t1 - t0).count();
  }

  BenchStats s;
  s.iterations = iterations;
  s.neurons = config.controller.sanm_init.rbf[0].size();
  s.gaussian_evals = adapt::gaussian_eval_count();
  s.gaussian_evals_per_step = static_cast<double>(s.gaussian_evals) / static_cast<double>(iterations);
  s.eval_count_ok = s.gaussian_evals == 3ULL * static_cast<std::uint64_t>(s.neurons) * iterations;
  s.mean_us = std::accumulate(lat.begin(), lat.end(), 0.0) / static_cast<double>(iterations);
  s.max_us = *std::max_element(lat.begin(), lat.end());
  s.p99_us = percentile(std::move(lat), 0.99);
  if (!sink.allFinite()) throw Error(ErrorCode::kInvalidConfig, "bench produced non-finite moments");
  return s;
}

}  // namespace sanm::harness
