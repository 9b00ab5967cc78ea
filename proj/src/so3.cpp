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

#include "sanm/so3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sanm::so3 {

double orthonormality_defect(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
}

RotationMatrix RotationMatrix::from_matrix(const Mat3& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kTooFarFromSO3, "non-finite entries");
  }
  const double defect = orthonormality_defect(m);
  const double det_err = std::abs(m.determinant() - 1.0);
  if (defect > tol::kOrthonormal || det_err > tol::kOrthonormal) {
    throw Error(ErrorCode::kTooFarFromSO3,
                "orthonormality defect " + std::to_string(defect) +
                    ", det error " + std::to_string(det_err));
  }
  return RotationMatrix(m);
}

Mat3 hat(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vec3 vee(const Mat3& m) {
  const double sym = (m + m.transpose()).cwiseAbs().maxCoeff() * 0.5;
  if (!(sym <= tol::kSkew)) {
    throw Error(ErrorCode::kNonSkewInput,
                "symmetric part " + std::to_string(sym));
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

RotationMatrix exp(const Vec3& v) {
  const double theta = v.norm();
  const Mat3 k = hat(v);
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < tol::kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return RotationMatrix::unchecked(Mat3::Identity() + a * k + b * k * k);
}

Vec3 log(const RotationMatrix& r) {
  const Mat3& m = r.matrix();
  const double cos_theta = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  const Vec3 w(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  if (theta < tol::kSmallAngle) {
    return 0.5 * w;
  }
  if (std::numbers::pi - theta < 1e-6) {
    // Near a half-turn sin(theta) vanishes; recover the axis from the
    // symmetric part R + I = 2 n n^T (1 - cos) + ...
    const Mat3 s = 0.5 * (m + Mat3::Identity());
    int i = 0;
    s.diagonal().maxCoeff(&i);
    Vec3 axis = s.col(i) / std::sqrt(std::max(s(i, i), 1e-300));
    axis.normalize();
    if (axis.dot(w) < 0.0) axis = -axis;
    return theta * axis;
  }
  return (theta / (2.0 * std::sin(theta))) * w;
}

Vec3 attitude_error(const RotationMatrix& r, const RotationMatrix& rd) {
  const Mat3 rel = rd.matrix().transpose() * r.matrix();
  const Mat3 skew = 0.5 * (rel - rel.transpose());
  return Vec3(skew(2, 1), skew(0, 2), skew(1, 0));
}

Vec3 angular_velocity_error(const Vec3& omega, const RotationMatrix& r,
                            const RotationMatrix& rd, const Vec3& omega_d) {
  return omega - r.matrix().transpose() * (rd.matrix() * omega_d);
}

double psi(const RotationMatrix& r, const RotationMatrix& rd) {
  const double tr = (rd.matrix().transpose() * r.matrix()).trace();
  return std::clamp(0.5 * (3.0 - tr), 0.0, 2.0);
}

Mat3 error_kinematics_matrix(const RotationMatrix& r, const RotationMatrix& rd) {
  const Mat3 rt_rd = r.matrix().transpose() * rd.matrix();
  return 0.5 * (rt_rd.trace() * Mat3::Identity() - rt_rd);
}

RotationMatrix orthonormalize(const Mat3& m) {
  if (!m.allFinite() || m.determinant() <= 0.0) {
    throw Error(ErrorCode::kTooFarFromSO3, "singular or reflecting input");
  }
  Mat3 q = m;
  for (int i = 0; i < tol::kPolarMaxIterations; ++i) {
    const Mat3 next = 0.5 * (q + q.inverse().transpose());
    const double step = (next - q).cwiseAbs().maxCoeff();
    q = next;
    if (step < tol::kPolarConverged) break;
  }
  const double dist = (m - q).norm();
  if (dist > tol::kRepairRadius) {
    throw Error(ErrorCode::kTooFarFromSO3,
                "Frobenius distance " + std::to_string(dist));
  }
  return RotationMatrix::unchecked(q);
}

}  // namespace sanm::so3
