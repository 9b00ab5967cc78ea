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

#include "sanm/allocation.hpp"

#include <algorithm>
#include <cmath>

namespace sanm::sim {

namespace {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

constexpr std::array<double, 4> kSignX{+1.0, -1.0, +1.0, -1.0};
constexpr std::array<double, 4> kSignY{+1.0, -1.0, -1.0, +1.0};
constexpr std::array<double, 4> kSpin{+1.0, +1.0, -1.0, -1.0};

// Maps per-rotor thrusts to (f, M1, M2, M3).
Mat4 wrench_matrix(double arm, const std::array<double, 4>& torque_ratio) {
  const double a = arm / std::sqrt(2.0);
  Mat4 A;
  for (int i = 0; i < 4; ++i) {
    A(0, i) = 1.0;
    A(1, i) = -kSignY[i] * a;
    A(2, i) = kSignX[i] * a;
    A(3, i) = kSpin[i] * torque_ratio[i];
  }
  return A;
}

}  // namespace

bool AllocationModel::valid() const {
  for (int i = 0; i < 4; ++i) {
    if (!(thrust_coeff[i] > 0.0) || !(torque_ratio[i] > 0.0)) return false;
    if (!(std::abs(thrust_perturbation[i]) < 0.5) || !(std::abs(torque_perturbation[i]) < 0.5)) {
      return false;
    }
  }
  return arm_length > 0.0 && max_thrust > 0.0 && std::abs(arm_perturbation) < 0.5;
}

AllocationResult actual_moment(const AllocationModel& allocation, const Vec3& M_d, double f_d) {
  const Mat4 nominal = wrench_matrix(allocation.arm_length, allocation.torque_ratio);
  const Vec4 wrench_d(f_d, M_d.x(), M_d.y(), M_d.z());
  const Vec4 thrust_d = nominal.partialPivLu().solve(wrench_d);

  AllocationResult out;
  Vec4 realized_thrust;
  std::array<double, 4> realized_ratio{};
  for (int i = 0; i < 4; ++i) {
    double t = thrust_d[i];
    if (t < -kNegativeThrustTolerance) out.infeasible = true;
    if (t < 0.0 || t > allocation.max_thrust) {
      out.clamped = true;
      t = std::clamp(t, 0.0, allocation.max_thrust);
    }
    out.thrust_cmd[i] = t;
    // Rotor command u = T / k_nominal, realized T = k_actual * u.
    const double u = t / allocation.thrust_coeff[i];
    realized_thrust[i] = allocation.thrust_coeff[i] * (1.0 + allocation.thrust_perturbation[i]) * u;
    realized_ratio[i] = allocation.torque_ratio[i] * (1.0 + allocation.torque_perturbation[i]);
  }

  const bool unperturbed =
      allocation.arm_perturbation == 0.0 &&
      std::all_of(allocation.thrust_perturbation.begin(), allocation.thrust_perturbation.end(),
                  [](double p) { return p == 0.0; }) &&
      std::all_of(allocation.torque_perturbation.begin(), allocation.torque_perturbation.end(),
                  [](double p) { return p == 0.0; });
  if (unperturbed && !out.clamped) {
    // Nominal mixing followed by nominal realization is the identity.
    out.f = f_d;
    out.M = M_d;
    out.delta_M = Vec3::Zero();
    return out;
  }

  const Mat4 actual =
      wrench_matrix(allocation.arm_length * (1.0 + allocation.arm_perturbation), realized_ratio);
  const Vec4 wrench = actual * realized_thrust;
  out.f = wrench[0];
  out.M = wrench.tail<3>();
  out.delta_M = out.M - M_d;
  return out;
}

}  // namespace sanm::sim
