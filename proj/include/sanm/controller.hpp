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

#include <vector>

#include "sanm/rigid_body.hpp"
#include "sanm/so3.hpp"

namespace sanm::control {

struct ControllerGains {
  double k_R = 100.0;     // 1/s^2
  double k_Omega = 80.0;  // 1/s
  double c_R = 0.6;       // 1/s

  bool valid() const { return k_R > 0.0 && k_Omega > 0.0 && c_R > 0.0; }
};

struct AttitudeCommand {
  so3::RotationMatrix Rd;
  Vec3 Omega_d = Vec3::Zero();
  Vec3 Omega_d_dot = Vec3::Zero();
};

enum class TrajectoryKind { kFixedHover, kHeadingSpin, kAttitudeWaypoints };

/// Waypoint in roll/pitch tilt (rotation vector components about body x/y)
/// and heading. Angles in rad.
struct AttitudeWaypoint {
  double t = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

/// Desired heading b1d(t) and desired force F_d(t).
///
/// fixed_hover:        b1d = b1d_fixed, F_d = hover_force
/// heading_spin:       b1d = (cos wt, sin wt, 0) rotated by the initial heading
/// attitude_waypoints: smootherstep interpolation of (roll, pitch, yaw)
///                     between waypoints; F_d keeps |hover_force|.
struct ReferenceTrajectory {
  TrajectoryKind kind = TrajectoryKind::kFixedHover;
  Vec3 hover_force{0.0, 0.0, -18.1485};  // N, NED
  Vec3 b1d_fixed = Vec3::UnitX();
  double heading_rate = 0.0;             // rad/s
  double heading_offset = 0.0;           // rad
  std::vector<AttitudeWaypoint> waypoints;

  Vec3 b1d(double t) const;
  Vec3 force(double t) const;
};

inline constexpr double kMinForce = 1e-6;
inline constexpr double kMinHeadingCross = 1e-3;

/// [b1c, b2c, b3c] with b3c = -F_d/|F_d|, b2c = b3c x b1d / |.|, b1c = b2c x b3c.
/// Throws Error(kZeroForce) or Error(kDegenerateHeading).
so3::RotationMatrix desired_attitude(const Vec3& F_d, const Vec3& b1d);

/// Rd(t) plus Omega_d from the log of Rd(t-dt)^T Rd(t+dt) over 2 dt, and
/// Omega_d_dot from central differences of Omega_d.
AttitudeCommand desired_rates(const ReferenceTrajectory& traj, double t, double dt);

/// Per-axis moment law:
///   M_d[j] = J_bar[j] { -k_R e_R[j] - k_Omega e_Omega[j]
///                       - ([Omega]x R^T Rd Omega_d)[j] + (R^T Rd Omega_d_dot)[j]
///                       - phi_bar[j] + (J^-1 [Omega]x J Omega)[j] if J known }
/// J_true is read only when scenario is kKnownInertia.
Vec3 compute_moment(const Vec3& e_R, const Vec3& e_Omega, const sim::RigidBodyState& state,
                    const AttitudeCommand& cmd, const ControllerGains& gains, const Vec3& J_bar,
                    const Vec3& phi_bar, const sim::InertiaTensor& J_true,
                    sim::ScenarioFlag scenario);

}  // namespace sanm::control
