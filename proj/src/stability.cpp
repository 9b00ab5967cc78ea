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

#include "sanm/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sanm::stability {

std::array<double, 2> sym_eigenvalues(const Mat2& m) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  const double r = std::hypot(half_diff, off);
  return {mean - r, mean + r};
}

Mat2 lower_bound_matrix(const control::ControllerGains& g) {
  Mat2 m;
  m << g.k_R / 2.0, -g.c_R / 2.0,
       -g.c_R / 2.0, 0.5;
  return m;
}

Mat2 upper_bound_matrix(const control::ControllerGains& g, double psi_R) {
  Mat2 m;
  m << g.k_R / (2.0 - psi_R), g.c_R / 2.0,
       g.c_R / 2.0, 0.5;
  return m;
}

Mat2 decrease_matrix(const control::ControllerGains& g) {
  Mat2 m;
  m << g.k_R * g.c_R / 2.0, -g.k_Omega * g.c_R / 2.0,
       -g.k_Omega * g.c_R / 2.0, (g.k_Omega - g.c_R) / 2.0;
  return m;
}

GainAuditReport check_gains(const control::ControllerGains& g, double psi_R) {
  if (!(psi_R > 0.0 && psi_R < 2.0)) {
    throw Error(ErrorCode::kInvalidPsi, "psi_R = " + std::to_string(psi_R));
  }
  GainAuditReport r;
  r.psi_R_used = psi_R;
  r.c_R_terms = {g.k_R * g.k_Omega / (g.k_Omega * g.k_Omega + g.k_R), std::sqrt(g.k_R),
                 std::sqrt(2.0 * g.k_R / (2.0 - psi_R)), g.k_Omega};
  r.c_R_bound = *std::min_element(r.c_R_terms.begin(), r.c_R_terms.end());
  r.c_R_ok = g.c_R < r.c_R_bound;
  r.eigs_M_R1 = sym_eigenvalues(lower_bound_matrix(g));
  r.eigs_M_R2 = sym_eigenvalues(upper_bound_matrix(g, psi_R));
  r.eigs_M_R = sym_eigenvalues(decrease_matrix(g));
  r.all_pd = r.eigs_M_R1[0] > 0.0 && r.eigs_M_R2[0] > 0.0 && r.eigs_M_R[0] > 0.0;
  return r;
}

LyapunovSample lyapunov_sample(const LyapunovInputs& in, const control::ControllerGains& g,
                               const Vec3& eta, const Vec3& gamma) {
  LyapunovSample s;
  s.t = in.t;
  s.V_Rs = g.k_R * in.psi_R + 0.5 * in.e_Omega.squaredNorm() + g.c_R * in.e_R.dot(in.e_Omega);
  for (int j = 0; j < 3; ++j) {
    s.V_Re += 0.5 * eta[j] * in.J_tilde[j] * in.J_tilde[j] +
              in.W_tilde_norm[j] * in.W_tilde_norm[j] / (2.0 * gamma[j]);
  }
  s.V_R = s.V_Rs + s.V_Re;
  s.z_R_norm = std::hypot(in.e_R.norm(), in.e_Omega.norm());
  return s;
}

AttractionReport check_attraction_domain(const so3::RotationMatrix& R0,
                                         const so3::RotationMatrix& Rd0, const Vec3& e_Omega0,
                                         const control::ControllerGains& g) {
  AttractionReport r;
  r.psi0 = so3::psi(R0, Rd0);
  const double e_R_norm = so3::attitude_error(R0, Rd0).norm();
  r.margin_psi = std::min(r.psi0, 2.0 - r.psi0);
  r.margin_e_R = 1.0 - e_R_norm;
  r.margin_omega = g.k_R * (2.0 - r.psi0) - 0.5 * g.c_R * g.c_R - e_Omega0.squaredNorm();
  r.converged_boundary = r.psi0 == 0.0;
  // |e_R| reaches 1 exactly at a quarter turn; that boundary is admitted.
  constexpr double kBoundary = 1e-12;
  const bool psi_ok = r.converged_boundary || (r.psi0 > 0.0 && r.psi0 < 2.0);
  r.inside = psi_ok && r.margin_e_R >= -kBoundary && r.margin_omega > 0.0;
  return r;
}

double tail_max(std::span<const double> z_norm, double tail_fraction) {
  const std::size_t n = z_norm.size();
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  const std::size_t start = n - std::clamp<std::size_t>(tail, 1, n);
  return *std::max_element(z_norm.begin() + static_cast<std::ptrdiff_t>(start), z_norm.end());
}

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> z_norm,
                         double tail_fraction) {
  if (t.size() != z_norm.size()) {
    throw Error(ErrorCode::kShapeMismatch, "time and norm columns differ in length");
  }
  if (t.size() < kMinTraceSamples) {
    throw Error(ErrorCode::kShapeMismatch, "trace needs at least 100 samples");
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) {
    throw Error(ErrorCode::kShapeMismatch, "tail fraction must be in (0, 0.5]");
  }
  EnvelopeFit fit;
  fit.eps_hat = tail_max(z_norm, tail_fraction);
  const double z0 = z_norm[0];
  if (!(z0 > fit.eps_hat)) {
    throw Error(ErrorCode::kNoTransient, "|z(0)| does not exceed the tail floor");
  }
  const double shift = 0.99 * fit.eps_hat;
  const double cutoff = fit.eps_hat + kFitWindowFraction * (z0 - fit.eps_hat);

  // Least squares y = a - beta x over the initial window.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(z_norm[i] > cutoff)) break;
    const double x = t[i] - t[0];
    const double y = std::log(z_norm[i] - shift);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) {
    throw Error(ErrorCode::kNoTransient, "transient window has fewer than 3 samples");
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  const double slope = (dn * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / dn;
  fit.beta_hat = -slope;
  fit.alpha_hat = std::exp(intercept) / z0;
  fit.fit_samples = n;
  fit.fit_end_time = t[n - 1];

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(z_norm[i] - shift) - (intercept + slope * (t[i] - t[0]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / dn);
  return fit;
}

DecreaseReport verify_decrease(std::span<const double> t, std::span<const double> V_R,
                               std::span<const double> z_norm,
                               const control::ControllerGains& g, double C_R, double floor) {
  if (t.size() != V_R.size() || t.size() != z_norm.size()) {
    throw Error(ErrorCode::kShapeMismatch, "column lengths differ");
  }
  DecreaseReport r;
  r.lambda_min = sym_eigenvalues(decrease_matrix(g))[0];
  r.C_R = C_R;
  r.floor = floor;
  const double v_max = V_R.empty() ? 0.0 : *std::max_element(V_R.begin(), V_R.end());
  r.tol = kDecreaseTolScale * std::abs(v_max);
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (!(z_norm[i] > floor)) continue;
    const double vdot = (V_R[i + 1] - V_R[i - 1]) / (t[i + 1] - t[i - 1]);
    const double bound = -r.lambda_min * z_norm[i] * z_norm[i] + C_R + r.tol;
    ++r.checked;
    if (vdot <= bound) {
      ++r.passed;
    } else {
      r.violation_times.push_back(t[i]);
    }
  }
  r.pass_fraction = r.checked == 0 ? 1.0 : static_cast<double>(r.passed) / static_cast<double>(r.checked);
  r.ok = r.pass_fraction >= kRequiredPassFraction;
  return r;
}

double c_r_constant(double eps_R, double eps_M, double lambda_min_J,
                    const control::ControllerGains& g) {
  if (!(g.k_Omega > g.c_R)) {
    throw Error(ErrorCode::kGainOrder, "k_Omega must exceed c_R");
  }
  const double e = eps_R + eps_M / lambda_min_J;
  return g.c_R * e * e / (2.0 * g.k_R) + e * e / (2.0 * (g.k_Omega - g.c_R));
}

double lemma_p1(double V_Re, double lambda_min_M1, double eps) {
  return 1.0 + V_Re / (lambda_min_M1 * eps * eps);
}

double lemma_p2(double V_Re, double lambda_max_M2, double eps) {
  return 1.0 + V_Re / (lambda_max_M2 * eps * eps);
}

double analytic_beta(const control::ControllerGains& g, double psi_R, double p2) {
  const double lmin = sym_eigenvalues(decrease_matrix(g))[0];
  const double lmax2 = sym_eigenvalues(upper_bound_matrix(g, psi_R))[1];
  return lmin / (2.0 * p2 * lmax2);
}

}  // namespace sanm::stability
