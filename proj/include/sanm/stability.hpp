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
#include <span>
#include <vector>

#include "sanm/controller.hpp"
#include "sanm/so3.hpp"

namespace sanm::stability {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Ascending eigenvalues of a symmetric 2x2 matrix (closed form).
std::array<double, 2> sym_eigenvalues(const Mat2& m);

/// Lower quadratic bound of V_Rs in z = (|e_R|, |e_Omega|).
Mat2 lower_bound_matrix(const control::ControllerGains& g);
/// Upper quadratic bound of V_Rs; valid while Psi_R <= psi_R.
Mat2 upper_bound_matrix(const control::ControllerGains& g, double psi_R);
/// Decrease matrix: dV_R/dt <= -z^T M z + C_R.
Mat2 decrease_matrix(const control::ControllerGains& g);

struct GainAuditReport {
  std::array<double, 4> c_R_terms{};  // k_R k_O/(k_O^2 + k_R), sqrt k_R, sqrt(2k_R/(2-psi)), k_O
  double c_R_bound = 0.0;              // min of the four terms
  bool c_R_ok = false;
  std::array<double, 2> eigs_M_R1{};
  std::array<double, 2> eigs_M_R2{};
  std::array<double, 2> eigs_M_R{};
  bool all_pd = false;
  double psi_R_used = 0.0;
};

/// Throws Error(kInvalidPsi) unless 0 < psi_R < 2.
GainAuditReport check_gains(const control::ControllerGains& g, double psi_R);

struct LyapunovInputs {
  double t = 0.0;
  double psi_R = 0.0;
  Vec3 e_R = Vec3::Zero();
  Vec3 e_Omega = Vec3::Zero();
  Vec3 J_tilde = Vec3::Zero();        // 1/J - 1/J_bar per axis
  Vec3 W_tilde_norm = Vec3::Zero();   // |W* - W_bar| per axis
};

struct LyapunovSample {
  double t = 0.0;
  double V_Rs = 0.0;
  double V_Re = 0.0;
  double V_R = 0.0;
  double z_R_norm = 0.0;
  double Vdot_fd = 0.0;  // filled by the trace-level pass; 0 otherwise
};

/// V_Rs = k_R Psi + |e_O|^2/2 + c_R e_R.e_O
/// V_Re = sum_j eta_j J~_j^2 / 2 + |W~_j|^2 / (2 gamma_j)
LyapunovSample lyapunov_sample(const LyapunovInputs& in, const control::ControllerGains& g,
                               const Vec3& eta, const Vec3& gamma);

struct AttractionReport {
  bool inside = false;
  bool converged_boundary = false;  // Psi_R(0) == 0, admitted
  double psi0 = 0.0;
  double margin_psi = 0.0;    // min(psi0, 2 - psi0)
  double margin_e_R = 0.0;    // 1 - |e_R(0)|
  double margin_omega = 0.0;  // k_R (2 - psi0) - c_R^2/2 - |e_O(0)|^2
};

AttractionReport check_attraction_domain(const so3::RotationMatrix& R0,
                                         const so3::RotationMatrix& Rd0, const Vec3& e_Omega0,
                                         const control::ControllerGains& g);

struct EnvelopeFit {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double eps_hat = 0.0;
  double residual = 0.0;  // RMS of the log-linear fit
  std::size_t fit_samples = 0;
  double fit_end_time = 0.0;
};

/// Fraction of the initial excess z(0) - eps_hat at which the fit window
/// closes.
inline constexpr double kFitWindowFraction = 0.05;
inline constexpr std::size_t kMinTraceSamples = 100;

/// Fits |z(t)| <= alpha |z(0)| exp(-beta t) + eps.
///
/// eps_hat is the max |z| over the final tail_fraction of the samples. beta
/// and alpha come from least squares on log(|z| - 0.99 eps_hat) over the
/// initial contiguous stretch where |z| stays above
/// eps_hat + kFitWindowFraction (|z(0)| - eps_hat).
/// Throws Error(kNoTransient) if |z(0)| <= eps_hat or the window is too
/// short, Error(kShapeMismatch) on bad inputs.
EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> z_norm,
                         double tail_fraction);

/// max |z| over the final tail_fraction of samples.
double tail_max(std::span<const double> z_norm, double tail_fraction);

struct DecreaseReport {
  double lambda_min = 0.0;  // of the decrease matrix
  double tol = 0.0;
  double floor = 0.0;
  double C_R = 0.0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  double pass_fraction = 0.0;
  bool ok = false;  // pass_fraction >= kRequiredPassFraction
  std::vector<double> violation_times;
};

inline constexpr double kRequiredPassFraction = 0.99;
inline constexpr double kDecreaseTolScale = 1e-4;

/// Central-difference dV_R/dt at interior samples of a uniformly sampled
/// trace, checked against -lambda_min(M_R) |z|^2 + C_R + tol with
/// tol = kDecreaseTolScale * max V_R. Samples with |z| <= floor are skipped.
DecreaseReport verify_decrease(std::span<const double> t, std::span<const double> V_R,
                               std::span<const double> z_norm,
                               const control::ControllerGains& g, double C_R, double floor);

/// C_R = c_R e^2 / (2 k_R) + e^2 / (2 (k_O - c_R)), e = eps_R + eps_M / lambda_min(J).
/// Throws Error(kGainOrder) if k_Omega <= c_R.
double c_r_constant(double eps_R, double eps_M, double lambda_min_J,
                    const control::ControllerGains& g);

/// Smallest p1 with p1 lambda_min(M_R1) |z|^2 >= V_R for |z| >= eps given V_Re.
double lemma_p1(double V_Re, double lambda_min_M1, double eps);
/// Companion constant for the upper bound.
double lemma_p2(double V_Re, double lambda_max_M2, double eps);
/// beta = lambda_min(M_R) / (2 p2 lambda_max(M_R2)).
double analytic_beta(const control::ControllerGains& g, double psi_R, double p2);

}  // namespace sanm::stability
