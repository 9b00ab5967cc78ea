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

#include "sanm/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <spdlog/spdlog.h>

#include "sanm/allocation.hpp"
#include "sanm/stability.hpp"

namespace sanm::harness {

namespace {

constexpr std::uint64_t kPhaseStream = 0x9e3779b97f4a7c15ULL;

const char* scenario_name(sim::ScenarioFlag s) {
  return s == sim::ScenarioFlag::kKnownInertia ? "known_inertia" : "unknown_inertia";
}

void write_meta(SimTrace& trace, const SimConfig& c, const sim::DisturbanceModel& dist) {
  const auto& g = c.controller.gains;
  const auto& s = c.controller.sanm_init;
  trace.set_meta("dt", format_double(c.run.dt));
  trace.set_meta("duration", format_double(c.run.duration));
  trace.set_meta("seed", std::to_string(c.run.seed));
  trace.set_meta("scenario", scenario_name(c.plant.scenario));
  trace.set_meta("sanm", c.controller.sanm_enabled ? "on" : "off");
  trace.set_meta("feedforward", c.controller.feedforward == Feedforward::kOracle ? "oracle" : "none");
  trace.set_meta("k_R", format_double(g.k_R));
  trace.set_meta("k_Omega", format_double(g.k_Omega));
  trace.set_meta("c_R", format_double(g.c_R));
  trace.set_meta("J", format_vec3(c.plant.J.vec()));
  trace.set_meta("eta", format_vec3({s.inertia[0].eta, s.inertia[1].eta, s.inertia[2].eta}));
  trace.set_meta("gamma", format_vec3({s.rbf[0].gamma, s.rbf[1].gamma, s.rbf[2].gamma}));
  trace.set_meta("disturbance_phase", format_vec3(dist.phase));
}

}  // namespace

sim::DisturbanceModel resolved_disturbance(const SimConfig& config) {
  sim::DisturbanceModel d = config.plant.disturbance;
  if (config.plant.random_phase) {
    std::mt19937_64 rng(config.run.seed ^ kPhaseStream);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (int j = 0; j < 3; ++j) d.phase[j] = u(rng);
  }
  return d;
}

SimTrace run_scenario(const SimConfig& config, RunStats* stats, bool time_controller) {
  config.validate();
  const double dt = config.run.dt;
  const std::size_t n = config.steps();
  const auto& gains = config.controller.gains;
  const auto& plant = config.plant;
  const sim::DisturbanceModel dist = resolved_disturbance(config);
  const bool sanm_on = config.controller.sanm_enabled;
  const bool oracle = config.controller.feedforward == Feedforward::kOracle;
  const int l = config.controller.sanm_init.rbf[0].size();

  Vec3 eta, gamma;
  for (int j = 0; j < 3; ++j) {
    eta[j] = config.controller.sanm_init.inertia[j].eta;
    gamma[j] = config.controller.sanm_init.rbf[j].gamma;
  }

  std::mt19937_64 noise_rng(config.run.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool noisy = plant.noise_omega_std > 0.0 || plant.noise_attitude_std > 0.0;

  SimTrace trace;
  trace.neurons = l;
  write_meta(trace, config, dist);
  trace.rows.reserve(n);

  sim::RigidBodyState state;
  state.R = so3::exp(plant.initial_rotvec);
  state.Omega = plant.initial_omega;
  state.t = 0.0;

  adapt::SanmState sanm = config.controller.sanm_init;
  Vec3 M_d_prev = Vec3::Zero();
  RunStats local;
  if (time_controller) local.controller_latency_us.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    state.t = t;

    sim::RigidBodyState measured = state;
    if (noisy) {
      const Vec3 dtheta(normal(noise_rng), normal(noise_rng), normal(noise_rng));
      const Vec3 domega(normal(noise_rng), normal(noise_rng), normal(noise_rng));
      measured.R = state.R * so3::exp(plant.noise_attitude_std * dtheta);
      measured.Omega = state.Omega + plant.noise_omega_std * domega;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const control::AttitudeCommand cmd = control::desired_rates(config.trajectory, t, dt);
    const Vec3 e_R = so3::attitude_error(measured.R, cmd.Rd);
    const Vec3 e_Omega = so3::angular_velocity_error(measured.Omega, measured.R, cmd.Rd, cmd.Omega_d);

    Vec3 J_bar = sanm.J_bar();
    Vec3 phi_bar = Vec3::Zero();
    adapt::SanmState weights_used = sanm;
    if (sanm_on) {
      adapt::SanmOutput out = adapt::sanm_step(sanm, e_R, e_Omega, M_d_prev, gains.c_R, dt);
      J_bar = out.J_bar;
      phi_bar = out.phi_bar;
      sanm = std::move(out.next);
    } else if (oracle) {
      phi_bar = sim::generalized_disturbance(dist, state, plant.J, plant.scenario);
    }
    const Vec3 M_d = control::compute_moment(e_R, e_Omega, measured, cmd, gains, J_bar, phi_bar,
                                             plant.J, plant.scenario);
    const double f_d = -config.trajectory.force(t).dot(state.R * Vec3::UnitZ());
    const sim::AllocationResult alloc = sim::actual_moment(plant.allocation, M_d, f_d);
    if (time_controller) {
      local.controller_latency_us.push_back(
          std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count());
    }
    if (alloc.infeasible) ++local.infeasible_steps;
    if (alloc.clamped) ++local.clamped_steps;

    TraceRow row;
    row.t = t;
    row.R = state.R.matrix();
    row.Omega = state.Omega;
    row.Rd = cmd.Rd.matrix();
    row.Omega_d = cmd.Omega_d;
    row.e_R = e_R;
    row.e_Omega = e_Omega;
    row.psi = so3::psi(measured.R, cmd.Rd);
    row.M_d = M_d;
    row.M = alloc.M;
    row.delta_M = alloc.delta_M;
    row.phi_true = sim::generalized_disturbance(dist, state, plant.J, plant.scenario);
    row.phi_bar = phi_bar;
    row.J_bar = J_bar;
    row.weight_norms = weights_used.weight_norms();
    row.weights.reserve(3 * static_cast<std::size_t>(l));
    for (const auto& s : weights_used.rbf) row.weights.insert(row.weights.end(), s.weights.begin(), s.weights.end());

    // W* = 0 proxy: the ideal weights are unknown, so |W~| is the estimate norm.
    stability::LyapunovInputs lin;
    lin.t = t;
    lin.psi_R = row.psi;
    lin.e_R = e_R;
    lin.e_Omega = e_Omega;
    for (int j = 0; j < 3; ++j) lin.J_tilde[j] = adapt::reciprocal_error(plant.J.vec()[j], J_bar[j]);
    lin.W_tilde_norm = row.weight_norms;
    const auto ly = stability::lyapunov_sample(lin, gains, eta, gamma);
    row.V_Rs = ly.V_Rs;
    row.V_Re = ly.V_Re;
    row.V_R = ly.V_R;
    trace.rows.push_back(std::move(row));

    state = sim::step(state, alloc.M, plant.J, dist, plant.scenario, dt);
    M_d_prev = M_d;
  }

  local.steps = n;
  trace.set_meta("infeasible_steps", std::to_string(local.infeasible_steps));
  if (local.infeasible_steps > 0) {
    spdlog::warn("{} of {} steps requested an infeasible wrench", local.infeasible_steps, n);
  }
  spdlog::debug("run finished: {} steps, sanm={}, seed={}", n, sanm_on ? "on" : "off", config.run.seed);
  if (stats) *stats = std::move(local);
  return trace;
}

}  // namespace sanm::harness
