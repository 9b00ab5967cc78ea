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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sanm/allocation.hpp"
#include "sanm/controller.hpp"
#include "sanm/rigid_body.hpp"
#include "sanm/sanm.hpp"

namespace sanm::harness {

struct PlantConfig {
  sim::InertiaTensor J{0.011, 0.020, 0.023};
  double mass = 1.6;          // kg
  double payload_mass = 0.25; // kg
  sim::DisturbanceModel disturbance;
  bool random_phase = false;  // draw disturbance phases from the run seed
  sim::AllocationModel allocation;
  sim::ScenarioFlag scenario = sim::ScenarioFlag::kUnknownInertia;
  double noise_omega_std = 0.0;     // rad/s
  double noise_attitude_std = 0.0;  // rad, applied through exp()
  Vec3 initial_rotvec = Vec3::Zero();
  Vec3 initial_omega = Vec3::Zero();
};

/// What the controller uses for phi_bar when SANM is off.
enum class Feedforward { kNone, kOracle };

struct ControllerConfig {
  control::ControllerGains gains;
  bool sanm_enabled = true;
  Feedforward feedforward = Feedforward::kNone;
  adapt::SanmState sanm_init;
};

struct RunConfig {
  double dt = 0.0025;
  double duration = 20.0;
  std::uint64_t seed = 1;
  std::string output = "trace.csv";
};

struct SimConfig {
  PlantConfig plant;
  ControllerConfig controller;
  control::ReferenceTrajectory trajectory;
  RunConfig run;

  /// Throws Error(kInvalidConfig) naming the first violated invariant.
  void validate() const;
  std::size_t steps() const;
};

/// Closed-loop parameter set of the simulated payload experiment (gains,
/// slice rates, RBF geometry, inertia bounds and initial estimates).
SimConfig default_config();

/// Applies `key = value` lines on top of `base`. '#' starts a comment.
/// Unknown keys and malformed values throw Error(kInvalidConfig).
SimConfig parse_config(std::string_view text, SimConfig base = default_config());
SimConfig load_config(const std::filesystem::path& path);

}  // namespace sanm::harness
