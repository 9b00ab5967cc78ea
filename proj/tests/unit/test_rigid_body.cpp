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

#include "sanm/errors.hpp"
#include "sanm/rigid_body.hpp"
#include "test_support.hpp"

namespace sanm {
namespace {

using sim::DisturbanceKind;
using sim::DisturbanceModel;
using sim::InertiaTensor;
using sim::RigidBodyState;
using sim::ScenarioFlag;
using testing::kPi;
using testing::RandomSource;

const InertiaTensor kJ{0.011, 0.020, 0.023};

RigidBodyState state_at(const Vec3& rotvec, const Vec3& omega, double t = 0.0) {
  RigidBodyState s;
  s.R = so3::exp(rotvec);
  s.Omega = omega;
  s.t = t;
  return s;
}

TEST(Disturbance, NoneIsZero) {
  DisturbanceModel m;
  EXPECT_EQ(sim::eval_disturbance(m, state_at(Vec3(0.1, 0.2, 0.3), Vec3(1, 2, 3), 4.0)), Vec3::Zero());
}

TEST(Disturbance, SinusoidExamples) {
  DisturbanceModel m;
  m.kind = DisturbanceKind::kSinusoid;
  m.amplitude = Vec3(1, 0, 0);
  m.phase = Vec3(kPi / 2, 0, 0);
  EXPECT_DOUBLE_EQ(sim::eval_disturbance(m, state_at(Vec3::Zero(), Vec3::Zero(), 3.7)).x(), 1.0);

  m.amplitude = Vec3(2, 0, 0);
  m.frequency = Vec3(0.5, 0, 0);
  m.phase = Vec3::Zero();
  const Vec3 d = sim::eval_disturbance(m, state_at(Vec3::Zero(), Vec3::Zero(), 0.5));
  EXPECT_NEAR(d.x(), 2.0, 1e-15);
  EXPECT_EQ(d.y(), 0.0);
  EXPECT_EQ(d.z(), 0.0);
}

TEST(Disturbance, PayloadProxyAddsStateCoupling) {
  DisturbanceModel m;
  m.kind = DisturbanceKind::kPayloadProxy;
  m.coupling_gain = 0.5;
  const Vec3 omega(1.0, 2.0, 0.0);
  const Vec3 d = sim::eval_disturbance(m, state_at(Vec3::Zero(), omega));
  EXPECT_LT((d - 0.5 * omega.norm() * omega.cross(Vec3::UnitZ())).norm(), 1e-15);
  m.bias = Vec3(0.1, 0.2, 0.3);
  EXPECT_LT((sim::eval_disturbance(m, state_at(Vec3::Zero(), Vec3::Zero())) - m.bias).norm(), 1e-15);
}

TEST(Disturbance, ValidityRejectsNegativeFrequency) {
  DisturbanceModel m;
  m.frequency = Vec3(-1, 0, 0);
  EXPECT_FALSE(m.valid());
}

TEST(OmegaDot, Examples) {
  for (auto sc : {ScenarioFlag::kKnownInertia, ScenarioFlag::kUnknownInertia}) {
    EXPECT_EQ(sim::omega_dot(state_at(Vec3::Zero(), Vec3::Zero()), Vec3::Zero(), kJ, Vec3::Zero(), sc),
              Vec3::Zero());
  }
  const Vec3 spin = sim::omega_dot(state_at(Vec3::Zero(), Vec3(0, 0, 1)), Vec3::Zero(), kJ, Vec3::Zero(),
                                   ScenarioFlag::kKnownInertia);
  EXPECT_LT(spin.norm(), 1e-15);
  const Vec3 tumble = sim::omega_dot(state_at(Vec3::Zero(), Vec3(1, 1, 0)), Vec3::Zero(), kJ, Vec3::Zero(),
                                     ScenarioFlag::kKnownInertia);
  EXPECT_NEAR(tumble.x(), 0.0, 1e-15);
  EXPECT_NEAR(tumble.y(), 0.0, 1e-15);
  EXPECT_NEAR(tumble.z(), -(0.020 - 0.011) / 0.023, 1e-12);
  EXPECT_NEAR(tumble.z(), -0.3913, 1e-4);
}

TEST(OmegaDot, ScenarioFlagOnlyChangesBookkeeping) {
  RandomSource rs(31);
  DisturbanceModel m;
  m.kind = DisturbanceKind::kPayloadProxy;
  m.amplitude = Vec3(1, 2, 3);
  m.frequency = Vec3(0.3, 0.2, 0.1);
  m.coupling_gain = 0.1;
  for (int i = 0; i < 200; ++i) {
    const RigidBodyState s = state_at(rs.vec(1.0), rs.vec(3.0), rs.uniform(0, 10));
    const Vec3 M = rs.vec(0.5);
    const Vec3 known = sim::omega_dot(s, M, kJ, sim::generalized_disturbance(m, s, kJ, ScenarioFlag::kKnownInertia),
                                      ScenarioFlag::kKnownInertia);
    const Vec3 unknown = sim::omega_dot(
        s, M, kJ, sim::generalized_disturbance(m, s, kJ, ScenarioFlag::kUnknownInertia),
        ScenarioFlag::kUnknownInertia);
    EXPECT_LT((known - unknown).norm(), 1e-12);
  }
}

TEST(Step, EquilibriumHolds) {
  const RigidBodyState s0 = state_at(Vec3(0.2, -0.1, 0.3), Vec3::Zero());
  const RigidBodyState s1 = sim::step(s0, Vec3::Zero(), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, 0.0025);
  EXPECT_LT(testing::frob(s1.R.matrix(), s0.R.matrix()), 1e-15);
  EXPECT_EQ(s1.Omega, Vec3::Zero());
  EXPECT_DOUBLE_EQ(s1.t, 0.0025);
}

TEST(Step, RejectsBadStep) {
  const RigidBodyState s0 = state_at(Vec3::Zero(), Vec3::Zero());
  for (double dt : {0.0, -0.001, 0.0101}) {
    try {
      sim::step(s0, Vec3::Zero(), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, dt);
      FAIL() << "dt " << dt << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    }
  }
}

TEST(Step, FullTurnAboutZReturnsToStart) {
  // Spinning about a principal axis needs no moment to hold the rate. The
  // step is set so that an integer number of steps spans exactly 2 pi.
  const int n = 2513;
  const double dt = 2.0 * kPi / n;
  RigidBodyState s = state_at(Vec3::Zero(), Vec3(0, 0, 1));
  const Mat3 start = s.R.matrix();
  for (int k = 0; k < n; ++k) s = sim::step(s, Vec3::Zero(), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, dt);
  EXPECT_LT(testing::frob(s.R.matrix(), start), 1e-6);
  EXPECT_LT((s.Omega - Vec3(0, 0, 1)).norm(), 1e-12);
}

TEST(Step, HeldRateAtFixedStepMatchesClosedForm) {
  const double dt = 0.0025;
  const int n = 2513;
  RigidBodyState s = state_at(Vec3::Zero(), Vec3(0, 0, 1));
  for (int k = 0; k < n; ++k) s = sim::step(s, Vec3::Zero(), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, dt);
  EXPECT_LT(testing::frob(s.R.matrix(), so3::exp(Vec3(0, 0, n * dt)).matrix()), 1e-9);
}

TEST(Step, LongRunOrthonormalityDrift) {
  RigidBodyState s = state_at(Vec3(0.3, -0.4, 0.5), Vec3(3.0, -2.0, 5.0));
  DisturbanceModel m;
  m.kind = DisturbanceKind::kSinusoid;
  m.amplitude = Vec3(1, 1, 1);
  m.frequency = Vec3(0.7, 1.1, 0.3);
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    s = sim::step(s, Vec3::Zero(), kJ, m, ScenarioFlag::kKnownInertia, 0.0025);
    worst = std::max(worst, so3::orthonormality_defect(s.R.matrix()));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Step, InertialAngularMomentumConserved) {
  RigidBodyState s = state_at(Vec3(0.1, 0.2, -0.3), Vec3(4.0, -3.0, 2.0));
  const Mat3 J = kJ.matrix();
  const Vec3 h0 = s.R * (J * s.Omega);
  const double e0 = 0.5 * s.Omega.dot(J * s.Omega);
  for (int k = 0; k < 10000; ++k) s = sim::step(s, Vec3::Zero(), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, 0.0025);
  const Vec3 h1 = s.R * (J * s.Omega);
  EXPECT_LT(std::abs(h1.norm() - h0.norm()) / h0.norm(), 1e-6);
  EXPECT_LT((h1 - h0).norm() / h0.norm(), 1e-6);
  EXPECT_LT(std::abs(0.5 * s.Omega.dot(J * s.Omega) - e0) / e0, 1e-6);
}

TEST(Step, RichardsonRatioShowsFourthOrder) {
  DisturbanceModel m;
  m.kind = DisturbanceKind::kSinusoid;
  m.amplitude = Vec3(2, -1, 0.5);
  m.frequency = Vec3(0.4, 0.6, 0.2);
  const RigidBodyState s0 = state_at(Vec3(0.2, 0.1, -0.3), Vec3(2.0, -1.5, 1.0));
  const Vec3 M(0.01, -0.02, 0.005);
  const double T = 0.4;
  auto run = [&](double dt) {
    RigidBodyState s = s0;
    const int n = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < n; ++k) s = sim::step(s, M, kJ, m, ScenarioFlag::kKnownInertia, dt);
    return s;
  };
  const RigidBodyState a = run(0.01), b = run(0.005), c = run(0.0025);
  const double e1 = testing::frob(a.R.matrix(), b.R.matrix()) + (a.Omega - b.Omega).norm();
  const double e2 = testing::frob(b.R.matrix(), c.R.matrix()) + (b.Omega - c.Omega).norm();
  const double ratio = e1 / e2;
  EXPECT_GT(ratio, 16.0 * 0.7);
  EXPECT_LT(ratio, 16.0 * 1.3);
}

TEST(Step, ScenarioFlagDoesNotChangePlant) {
  DisturbanceModel m;
  m.kind = DisturbanceKind::kPayloadProxy;
  m.amplitude = Vec3(1, 2, 0.5);
  m.frequency = Vec3(0.3, 0.5, 0.1);
  m.coupling_gain = 0.05;
  RigidBodyState a = state_at(Vec3(0.3, 0.1, 0.2), Vec3(2, -3, 1));
  RigidBodyState b = a;
  for (int k = 0; k < 4000; ++k) {
    const Vec3 M(0.01 * std::sin(0.01 * k), 0.0, -0.005);
    a = sim::step(a, M, kJ, m, ScenarioFlag::kKnownInertia, 0.0025);
    b = sim::step(b, M, kJ, m, ScenarioFlag::kUnknownInertia, 0.0025);
  }
  EXPECT_LT(testing::frob(a.R.matrix(), b.R.matrix()), 1e-10);
  EXPECT_LT((a.Omega - b.Omega).norm(), 1e-9);
}

TEST(Flow, MatchesStepForSmallDt) {
  const RigidBodyState s0 = state_at(Vec3(0.3, 0.1, 0.2), Vec3(2, -3, 1));
  const auto a = sim::step(s0, Vec3(0.01, 0, 0), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, 0.001);
  const auto b = sim::flow(s0, Vec3(0.01, 0, 0), kJ, DisturbanceModel{}, ScenarioFlag::kKnownInertia, 0.001);
  EXPECT_LT(testing::frob(a.R.matrix(), b.R.matrix()), 1e-14);
  EXPECT_LT((a.Omega - b.Omega).norm(), 1e-14);
}

}  // namespace
}  // namespace sanm
