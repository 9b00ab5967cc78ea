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

#include <gtest/gtest.h>

#include "sanm/controller.hpp"
#include "sanm/errors.hpp"
#include "test_support.hpp"

namespace sanm {
namespace {

using control::ControllerGains;
using control::ReferenceTrajectory;
using control::TrajectoryKind;
using sim::InertiaTensor;
using sim::RigidBodyState;
using sim::ScenarioFlag;
using testing::kPi;

const InertiaTensor kJ{0.011, 0.020, 0.023};
const Vec3 kHover(0, 0, -18.1485);

TEST(DesiredAttitude, Examples) {
  EXPECT_LT(testing::frob(control::desired_attitude(kHover, Vec3::UnitX()).matrix(), Mat3::Identity()), 1e-15);
  EXPECT_LT(testing::frob(control::desired_attitude(kHover, Vec3::UnitY()).matrix(),
                          so3::exp(Vec3(0, 0, kPi / 2)).matrix()),
            1e-15);
}

TEST(DesiredAttitude, Guards) {
  try {
    control::desired_attitude(kHover, Vec3::UnitZ());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateHeading);
  }
  try {
    control::desired_attitude(Vec3(0, 0, 1e-7), Vec3::UnitX());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroForce);
  }
}

TEST(DesiredAttitude, RandomOutputsAreRightHandedOrthonormal) {
  testing::RandomSource rs(51);
  int accepted = 0;
  for (int i = 0; i < 5000; ++i) {
    const Vec3 F = rs.unit() * rs.uniform(0.1, 40.0);
    const Vec3 b1d = rs.unit();
    if ((F.normalized()).cross(b1d).norm() < 1e-3) continue;
    const Mat3 R = control::desired_attitude(F, b1d).matrix();
    EXPECT_LT(so3::orthonormality_defect(R), 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
    EXPECT_LT((R.col(2) + F.normalized()).norm(), 1e-12);
    ++accepted;
  }
  EXPECT_GT(accepted, 4900);
}

TEST(DesiredRates, FixedHoverIsExactlyZero) {
  ReferenceTrajectory traj;
  const auto cmd = control::desired_rates(traj, 1.234, 0.0025);
  EXPECT_EQ(cmd.Omega_d, Vec3::Zero());
  EXPECT_EQ(cmd.Omega_d_dot, Vec3::Zero());
}

TEST(DesiredRates, HeadingSpinRecoversYawRate) {
  ReferenceTrajectory traj;
  traj.kind = TrajectoryKind::kHeadingSpin;
  traj.heading_rate = 0.5;
  for (double t : {0.0, 0.7, 3.3, 12.0}) {
    const auto cmd = control::desired_rates(traj, t, 0.0025);
    EXPECT_LT((cmd.Omega_d - Vec3(0, 0, 0.5)).norm(), 1e-6);
    EXPECT_LT(cmd.Omega_d_dot.norm(), 1e-5);
    EXPECT_LT((cmd.Rd.column(0) - Vec3(std::cos(0.5 * t), std::sin(0.5 * t), 0)).norm(), 1e-12);
  }
}

TEST(DesiredRates, WaypointsAreSmoothAndBounded) {
  ReferenceTrajectory traj;
  traj.kind = TrajectoryKind::kAttitudeWaypoints;
  traj.waypoints = {{0.0, 0, 0, 0}, {2.0, 0.2, -0.1, 0.5}, {4.0, 0, 0, 0}};
  for (double t = 0.0; t < 5.0; t += 0.05) {
    const auto cmd = control::desired_rates(traj, t, 0.0025);
    EXPECT_TRUE(cmd.Omega_d.allFinite());
    EXPECT_LT(cmd.Omega_d.norm(), 1.0);
    EXPECT_LT(so3::orthonormality_defect(cmd.Rd.matrix()), 1e-12);
  }
}

RigidBodyState hover_state() {
  RigidBodyState s;
  s.R = so3::RotationMatrix::identity();
  return s;
}

TEST(ComputeMoment, Examples) {
  const ControllerGains g;
  control::AttitudeCommand cmd;
  const auto s = hover_state();
  EXPECT_EQ(control::compute_moment(Vec3::Zero(), Vec3::Zero(), s, cmd, g, kJ.vec(), Vec3::Zero(), kJ,
                                    ScenarioFlag::kUnknownInertia),
            Vec3::Zero());
  const Vec3 a = control::compute_moment(Vec3(0.1, 0, 0), Vec3::Zero(), s, cmd, g, Vec3(0.011, 0.02, 0.02),
                                         Vec3::Zero(), kJ, ScenarioFlag::kUnknownInertia);
  EXPECT_NEAR(a.x(), -0.11, 1e-15);
  const Vec3 b = control::compute_moment(Vec3::Zero(), Vec3(0, 0.2, 0), s, cmd, g, Vec3(0.011, 0.020, 0.02),
                                         Vec3::Zero(), kJ, ScenarioFlag::kUnknownInertia);
  EXPECT_NEAR(b.y(), -0.32, 1e-15);
}

TEST(ComputeMoment, SuperpositionInErrors) {
  testing::RandomSource rs(52);
  const ControllerGains g;
  for (int i = 0; i < 500; ++i) {
    RigidBodyState s;
    s.R = rs.rotation();
    s.Omega = rs.vec(2.0);
    control::AttitudeCommand cmd;
    cmd.Rd = rs.rotation();
    cmd.Omega_d = rs.vec(1.0);
    cmd.Omega_d_dot = rs.vec(1.0);
    const Vec3 Jb = kJ.vec(), phi = rs.vec(3.0);
    for (auto sc : {ScenarioFlag::kKnownInertia, ScenarioFlag::kUnknownInertia}) {
      auto m = [&](const Vec3& eR, const Vec3& eO) {
        return control::compute_moment(eR, eO, s, cmd, g, Jb, phi, kJ, sc);
      };
      const Vec3 a1 = rs.vec(0.5), a2 = rs.vec(0.5), b1 = rs.vec(3.0), b2 = rs.vec(3.0);
      const Vec3 base = m(Vec3::Zero(), Vec3::Zero());
      const Vec3 lhs = m(a1 + a2, b1 + b2) - base;
      const Vec3 rhs = (m(a1, b1) - base) + (m(a2, b2) - base);
      EXPECT_LT((lhs - rhs).norm(), 1e-12);
      const Vec3 scaled = m(2.5 * a1, 2.5 * b1) - base;
      EXPECT_LT((scaled - 2.5 * (m(a1, b1) - base)).norm(), 1e-12);
    }
  }
}

TEST(ComputeMoment, GyroTermOnlyWhenInertiaKnown) {
  RigidBodyState s = hover_state();
  s.Omega = Vec3(1, 1, 0);
  const ControllerGains g;
  control::AttitudeCommand cmd;
  const Vec3 unknown = control::compute_moment(Vec3::Zero(), Vec3::Zero(), s, cmd, g, kJ.vec(), Vec3::Zero(), kJ,
                                               ScenarioFlag::kUnknownInertia);
  const Vec3 known = control::compute_moment(Vec3::Zero(), Vec3::Zero(), s, cmd, g, kJ.vec(), Vec3::Zero(), kJ,
                                             ScenarioFlag::kKnownInertia);
  EXPECT_EQ(unknown, Vec3::Zero());
  // J_bar o (J^-1 (Omega x J Omega)) with J_bar = J is the torque-level term.
  EXPECT_LT((known - s.Omega.cross(kJ.matrix() * s.Omega)).norm(), 1e-15);
}

}  // namespace
}  // namespace sanm
