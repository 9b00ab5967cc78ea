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

#include <Eigen/Dense>

#include "sanm/errors.hpp"

namespace sanm {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

namespace so3 {

/// Numeric tolerances used across the SO(3) layer.
namespace tol {
inline constexpr double kOrthonormal = 1e-9;     // |R^T R - I|_max and |det R - 1|
inline constexpr double kSkew = 1e-8;            // symmetric part accepted by vee()
inline constexpr double kSmallAngle = 1e-8;      // series branch of exp/log
inline constexpr double kPolarConverged = 1e-14; // polar iteration stop
inline constexpr double kRepairRadius = 0.1;     // Frobenius distance accepted by orthonormalize()
inline constexpr int kPolarMaxIterations = 50;
}  // namespace tol

/// Orthonormal 3x3 matrix with det = +1.
///
/// Construction through from_matrix() validates the invariants; exp(),
/// orthonormalize() and the other producers in this header only ever hand
/// out valid rotations.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::Identity()) {}

  static RotationMatrix identity() { return RotationMatrix(); }

  /// Throws Error(kTooFarFromSO3) when m violates the invariants at
  /// tol::kOrthonormal.
  static RotationMatrix from_matrix(const Mat3& m);

  /// Skips validation. Only for values that are rotations by construction.
  static RotationMatrix unchecked(const Mat3& m) { return RotationMatrix(m); }

  const Mat3& matrix() const { return m_; }
  RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }
  Vec3 column(int i) const { return m_.col(i); }

  RotationMatrix operator*(const RotationMatrix& rhs) const {
    return RotationMatrix(m_ * rhs.m_);
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  explicit RotationMatrix(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// max |m^T m - I| over entries.
double orthonormality_defect(const Mat3& m);

/// Cross-product matrix: hat(a) * b == a x b.
Mat3 hat(const Vec3& v);

/// Inverse of hat(). Throws Error(kNonSkewInput) if the symmetric part of m
/// exceeds tol::kSkew.
Vec3 vee(const Mat3& m);

/// Rodrigues exponential. Uses the second-order series below
/// tol::kSmallAngle.
RotationMatrix exp(const Vec3& v);

/// Principal logarithm, |result| <= pi.
Vec3 log(const RotationMatrix& r);

/// e_R = 1/2 (Rd^T R - R^T Rd)^vee
Vec3 attitude_error(const RotationMatrix& r, const RotationMatrix& rd);

/// e_Omega = Omega - R^T Rd Omega_d
Vec3 angular_velocity_error(const Vec3& omega, const RotationMatrix& r,
                            const RotationMatrix& rd, const Vec3& omega_d);

/// Psi_R = 1/2 tr(I - Rd^T R), in [0, 2].
double psi(const RotationMatrix& r, const RotationMatrix& rd);

/// Y(Rd^T R) = 1/2 (tr(R^T Rd) I - R^T Rd), so that de_R/dt = Y e_Omega.
Mat3 error_kinematics_matrix(const RotationMatrix& r, const RotationMatrix& rd);

/// Nearest rotation by iterated polar refinement m <- (m + m^-T) / 2.
/// Throws Error(kTooFarFromSO3) if m is further than tol::kRepairRadius
/// (Frobenius) from the result, or is singular / reflecting.
RotationMatrix orthonormalize(const Mat3& m);

}  // namespace so3
}  // namespace sanm
