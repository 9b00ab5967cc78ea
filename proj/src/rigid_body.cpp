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

#include "sanm/rigid_body.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sanm::sim {

bool DisturbanceModel::valid() const {
  return amplitude.allFinite() && frequency.allFinite() && phase.allFinite() &&
         bias.allFinite() && std::isfinite(coupling_gain) &&
         (frequency.array() >= 0.0).all();
}

Vec3 eval_disturbance(const DisturbanceModel& model, const RigidBodyState& state) {
  if (model.kind == DisturbanceKind::kNone) return Vec3::Zero();
  const double w = 2.0 * std::numbers::pi * state.t;
  Vec3 phi;
  for (int i = 0; i < 3; ++i) {
    phi[i] = model.bias[i] + model.amplitude[i] * std::sin(w * model.frequency[i] + model.phase[i]);
  }
  if (model.kind == DisturbanceKind::kPayloadProxy) {
    phi += model.coupling_gain * state.Omega.norm() * state.Omega.cross(Vec3::UnitZ());
  }
  return phi;
}

Vec3 gyroscopic_acceleration(const Vec3& omega, const InertiaTensor& J) {
  const Vec3 jv = J.vec();
  return omega.cross(jv.cwiseProduct(omega)).cwiseQuotient(jv);
}

Vec3 omega_dot(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
               const Vec3& phi, ScenarioFlag scenario) {
  const Vec3 accel = M.cwiseQuotient(J.vec());
  if (scenario == ScenarioFlag::kKnownInertia) {
    return accel - gyroscopic_acceleration(state.Omega, J) + phi;
  }
  return accel + phi;
}

Vec3 generalized_disturbance(const DisturbanceModel& model, const RigidBodyState& state,
                             const InertiaTensor& J, ScenarioFlag scenario) {
  Vec3 phi = eval_disturbance(model, state);
  if (scenario == ScenarioFlag::kUnknownInertia) {
    phi -= gyroscopic_acceleration(state.Omega, J);
  }
  return phi;
}

namespace {

// Inverse of the right-trivialized dexp, truncated after the Bernoulli B2
// term; enough for 4th order.
Vec3 dexp_inv(const Vec3& theta, const Vec3& v) {
  const Vec3 tv = theta.cross(v);
  return v + 0.5 * tv + (1.0 / 12.0) * theta.cross(tv);
}

struct Stage {
  RigidBodyState state;
  Vec3 alpha;  // angular acceleration at this stage
};

Stage eval_stage(const RigidBodyState& base, const Vec3& theta, const Vec3& omega,
                 double t, const Vec3& M, const InertiaTensor& J,
                 const DisturbanceModel& model, ScenarioFlag scenario) {
  Stage s;
  s.state.R = base.R * so3::exp(theta);
  s.state.Omega = omega;
  s.state.t = t;
  const Vec3 phi = generalized_disturbance(model, s.state, J, scenario);
  s.alpha = omega_dot(s.state, M, J, phi, scenario);
  return s;
}

RigidBodyState rkmk4(const RigidBodyState& x, const Vec3& M, const InertiaTensor& J,
                     const DisturbanceModel& model, ScenarioFlag scenario, double h) {
  const Vec3 zero = Vec3::Zero();
  const Stage s1 = eval_stage(x, zero, x.Omega, x.t, M, J, model, scenario);
  const Vec3 k1 = h * x.Omega;

  const Vec3 th2 = 0.5 * k1;
  const Vec3 om2 = x.Omega + 0.5 * h * s1.alpha;
  const Stage s2 = eval_stage(x, th2, om2, x.t + 0.5 * h, M, J, model, scenario);
  const Vec3 k2 = h * dexp_inv(th2, om2);

  const Vec3 th3 = 0.5 * k2;
  const Vec3 om3 = x.Omega + 0.5 * h * s2.alpha;
  const Stage s3 = eval_stage(x, th3, om3, x.t + 0.5 * h, M, J, model, scenario);
  const Vec3 k3 = h * dexp_inv(th3, om3);

  const Vec3 th4 = k3;
  const Vec3 om4 = x.Omega + h * s3.alpha;
  const Stage s4 = eval_stage(x, th4, om4, x.t + h, M, J, model, scenario);
  const Vec3 k4 = h * dexp_inv(th4, om4);

  RigidBodyState out;
  out.R = x.R * so3::exp((k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0);
  out.Omega = x.Omega + (h / 6.0) * (s1.alpha + 2.0 * s2.alpha + 2.0 * s3.alpha + s4.alpha);
  out.t = x.t + h;
  return out;
}

}  // namespace

RigidBodyState flow(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
                    const DisturbanceModel& model, ScenarioFlag scenario, double dt) {
  return rkmk4(state, M, J, model, scenario, dt);
}

RigidBodyState step(const RigidBodyState& state, const Vec3& M, const InertiaTensor& J,
                    const DisturbanceModel& model, ScenarioFlag scenario, double dt) {
  if (!(dt > 0.0 && dt <= kMaxStep)) {
    throw Error(ErrorCode::kInvalidConfig, "step dt out of range: " + std::to_string(dt));
  }
  RigidBodyState next = rkmk4(state, M, J, model, scenario, dt);
  next.R = so3::orthonormalize(next.R.matrix());
  return next;
}

}  // namespace sanm::sim
