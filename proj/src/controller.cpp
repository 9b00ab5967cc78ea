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

#include "sanm/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sanm::control {

namespace {

double smootherstep(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

AttitudeWaypoint interpolate(const std::vector<AttitudeWaypoint>& wps, double t) {
  if (wps.empty()) return {};
  if (t <= wps.front().t) return wps.front();
  if (t >= wps.back().t) return wps.back();
  const auto hi = std::upper_bound(wps.begin(), wps.end(), t,
                                   [](double v, const AttitudeWaypoint& w) { return v < w.t; });
  const auto lo = hi - 1;
  const double s = smootherstep((t - lo->t) / (hi->t - lo->t));
  AttitudeWaypoint out;
  out.t = t;
  out.roll = lo->roll + s * (hi->roll - lo->roll);
  out.pitch = lo->pitch + s * (hi->pitch - lo->pitch);
  out.yaw = lo->yaw + s * (hi->yaw - lo->yaw);
  return out;
}

}  // namespace

Vec3 ReferenceTrajectory::b1d(double t) const {
  switch (kind) {
    case TrajectoryKind::kFixedHover:
      return b1d_fixed;
    case TrajectoryKind::kHeadingSpin: {
      const double psi = heading_offset + heading_rate * t;
      return {std::cos(psi), std::sin(psi), 0.0};
    }
    case TrajectoryKind::kAttitudeWaypoints: {
      const double yaw = interpolate(waypoints, t).yaw;
      return {std::cos(yaw), std::sin(yaw), 0.0};
    }
  }
  return b1d_fixed;
}

Vec3 ReferenceTrajectory::force(double t) const {
  if (kind != TrajectoryKind::kAttitudeWaypoints) return hover_force;
  const AttitudeWaypoint w = interpolate(waypoints, t);
  const Vec3 b3 = so3::exp(Vec3(w.roll, w.pitch, 0.0)) * Vec3::UnitZ();
  return -hover_force.norm() * b3;
}

so3::RotationMatrix desired_attitude(const Vec3& F_d, const Vec3& b1d) {
  const double f = F_d.norm();
  if (!(f > kMinForce)) {
    throw Error(ErrorCode::kZeroForce, "|F_d| = " + std::to_string(f));
  }
  const Vec3 b3c = -F_d / f;
  const Vec3 cross = b3c.cross(b1d);
  const double c = cross.norm();
  if (!(c >= kMinHeadingCross)) {
    throw Error(ErrorCode::kDegenerateHeading, "|b3c x b1d| = " + std::to_string(c));
  }
  const Vec3 b2c = cross / c;
  const Vec3 b1c = b2c.cross(b3c);
  Mat3 m;
  m.col(0) = b1c;
  m.col(1) = b2c;
  m.col(2) = b3c;
  return so3::RotationMatrix::unchecked(m);
}

namespace {

so3::RotationMatrix rd_at(const ReferenceTrajectory& traj, double t) {
  return desired_attitude(traj.force(t), traj.b1d(t));
}

Vec3 omega_d_at(const ReferenceTrajectory& traj, double t, double dt) {
  const so3::RotationMatrix before = rd_at(traj, t - dt);
  const so3::RotationMatrix after = rd_at(traj, t + dt);
  return so3::log(before.transpose() * after) / (2.0 * dt);
}

}  // namespace

AttitudeCommand desired_rates(const ReferenceTrajectory& traj, double t, double dt) {
  AttitudeCommand cmd;
  cmd.Rd = rd_at(traj, t);
  if (traj.kind == TrajectoryKind::kFixedHover) return cmd;
  cmd.Omega_d = omega_d_at(traj, t, dt);
  cmd.Omega_d_dot = (omega_d_at(traj, t + dt, dt) - omega_d_at(traj, t - dt, dt)) / (2.0 * dt);
  return cmd;
}

Vec3 compute_moment(const Vec3& e_R, const Vec3& e_Omega, const sim::RigidBodyState& state,
                    const AttitudeCommand& cmd, const ControllerGains& gains, const Vec3& J_bar,
                    const Vec3& phi_bar, const sim::InertiaTensor& J_true,
                    sim::ScenarioFlag scenario) {
  const Mat3 rt_rd = state.R.matrix().transpose() * cmd.Rd.matrix();
  Vec3 accel = -gains.k_R * e_R - gains.k_Omega * e_Omega -
               state.Omega.cross(rt_rd * cmd.Omega_d) + rt_rd * cmd.Omega_d_dot - phi_bar;
  if (scenario == sim::ScenarioFlag::kKnownInertia) {
    accel += sim::gyroscopic_acceleration(state.Omega, J_true);
  }
  return J_bar.cwiseProduct(accel);
}

}  // namespace sanm::control
