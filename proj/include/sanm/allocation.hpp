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

#include <array>

#include "sanm/so3.hpp"

namespace sanm::sim {

/// Quad-X rotor allocation with nominal and realized coefficients.
///
/// Rotor layout (x forward, y right, z down), arm length d, a = d / sqrt(2):
///   1: (+a, +a) spin +1    2: (-a, -a) spin +1
///   3: (+a, -a) spin -1    4: (-a, +a) spin -1
/// A rotor producing thrust T contributes (-y T, x T, spin * c_tau * T).
///
/// Commands are formed with the nominal coefficients; the plant realizes
/// them with each coefficient scaled by (1 + perturbation).
struct AllocationModel {
  std::array<double, 4> thrust_coeff{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> torque_ratio{0.016, 0.016, 0.016, 0.016};
  double arm_length = 0.2;  // m
  double max_thrust = 8.0;  // N per rotor

  std::array<double, 4> thrust_perturbation{};
  std::array<double, 4> torque_perturbation{};
  double arm_perturbation = 0.0;

  bool valid() const;
};

struct AllocationResult {
  Vec3 M = Vec3::Zero();        // realized moment
  Vec3 delta_M = Vec3::Zero();  // M - M_d
  double f = 0.0;               // realized total thrust
  std::array<double, 4> thrust_cmd{};  // per-rotor thrust after clamping
  bool clamped = false;
  bool infeasible = false;      // a rotor demanded negative thrust beyond tolerance
};

inline constexpr double kNegativeThrustTolerance = 1e-9;

/// Mixes (f_d, M_d) into rotor thrusts with the nominal model, clamps to
/// [0, max_thrust], and returns the wrench the perturbed rotors deliver.
/// Infeasible wrenches are flagged in the result and clamped, not thrown.
AllocationResult actual_moment(const AllocationModel& allocation, const Vec3& M_d, double f_d);

}  // namespace sanm::sim
