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

#include "sanm/so3.hpp"

namespace sanm::sim {

/// Principal moments of a diagonal inertia tensor, kg m^2.
struct InertiaTensor {
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;

  static InertiaTensor from_vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
  Vec3 vec() const { return {j1, j2, j3}; }
  Mat3 matrix() const { return vec().asDiagonal(); }
  double min() const { return vec().minCoeff(); }
  bool valid() const { return j1 > 0.0 && j2 > 0.0 && j3 > 0.0; }
};

struct RigidBodyState {
  so3::RotationMatrix R;
  Vec3 Omega = Vec3::Zero();  // body rate, rad/s
  double t = 0.0;
};

/// Whether the controller may use the inertia tensor. The plant physics is
/// the same either way.
enum class ScenarioFlag { kKnownInertia, kUnknownInertia };

enum class DisturbanceKind { kNone, kSinusoid, kPayloadProxy };

/// External angular-acceleration disturbance, rad/s^2.
///
/// sinusoid:      bias + amplitude .* sin(2 pi frequency t + phase)
/// payload_proxy: sinusoid + coupling_gain |Omega| (Omega x e3)
struct DisturbanceModel {
  DisturbanceKind kind = DisturbanceKind::kNone;
  Vec3 amplitude = Vec3::Zero();
  Vec3 frequency = Vec3::Zero();  // Hz
  Vec3 phase = Vec3::Zero();      // rad
  Vec3 bias = Vec3::Zero();
  double coupling_gain = 0.0;

  bool valid() const;
};

Vec3 eval_disturbance(const DisturbanceModel& model, const RigidBodyState& state);

/// J^-1 (Omega x J Omega)
Vec3 gyroscopic_acceleration(const Vec3& omega, const InertiaTensor& J);

/// known_inertia:   J^-1 (M - Omega x J Omega) + phi
/// unknown_inertia: J^-1 M + phi, with phi the generalized disturbance that
///                  already contains -J^-1 (Omega x J Omega).
Vec3 omega_dot(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
               const Vec3& phi, ScenarioFlag scenario);

/// The disturbance a controller in `scenario` has to account for:
/// external only when J is known, external plus gyroscopic term otherwise.
Vec3 generalized_disturbance(const DisturbanceModel& model, const RigidBodyState& state,
                             const InertiaTensor& J, ScenarioFlag scenario);

inline constexpr double kMaxStep = 0.01;

/// One Runge-Kutta-Munthe-Kaas (4th order) step on SO(3) x R^3 with M held
/// constant, followed by polar re-orthonormalization.
/// Throws Error(kInvalidConfig) if dt is outside (0, kMaxStep].
RigidBodyState step(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
                    const DisturbanceModel& model, ScenarioFlag scenario, double dt);

/// Same integrator without the dt bound or re-orthonormalization; used for
/// short finite-difference probes of the flow (dt may be negative).
RigidBodyState flow(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
                    const DisturbanceModel& model, ScenarioFlag scenario, double dt);

}  // namespace sanm::sim
