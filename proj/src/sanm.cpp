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

#include "sanm/sanm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sanm::adapt {

namespace {
thread_local std::uint64_t g_gaussian_evals = 0;
}  // namespace

std::uint64_t gaussian_eval_count() { return g_gaussian_evals; }
void reset_gaussian_eval_count() { g_gaussian_evals = 0; }

bool RbfSlice::valid() const {
  const int l = size();
  if (l < 1 || l > kMaxNeurons) return false;
  if (center_e_R.size() != l || center_e_Omega.size() != l || width.size() != l) return false;
  if (!(gamma > 0.0) || !(r_w > 0.0)) return false;
  if (!weights.allFinite() || !center_e_R.allFinite() || !center_e_Omega.allFinite()) return false;
  return (width.array() > 0.0).all() && weights.norm() <= r_w * (1.0 + 1e-12);
}

bool InertiaSlice::valid() const {
  return J_min > 0.0 && J_bar >= J_min && J_max > J_min && eta > 0.0 && s > 0.0 &&
         std::isfinite(J_bar);
}

bool SanmState::valid() const {
  for (int j = 0; j < 3; ++j) {
    if (!inertia[j].valid() || !rbf[j].valid()) return false;
  }
  return true;
}

RbfSlice make_rbf_slice(std::initializer_list<double> center_e_R,
                        std::initializer_list<double> center_e_Omega,
                        std::initializer_list<double> width, double gamma, double r_w) {
  const auto l = static_cast<Eigen::Index>(center_e_R.size());
  if (l < 1 || l > kMaxNeurons || static_cast<Eigen::Index>(center_e_Omega.size()) != l ||
      static_cast<Eigen::Index>(width.size()) != l) {
    throw std::invalid_argument("make_rbf_slice: inconsistent neuron count");
  }
  RbfSlice s;
  s.center_e_R = Eigen::Map<const Eigen::VectorXd>(center_e_R.begin(), l);
  s.center_e_Omega = Eigen::Map<const Eigen::VectorXd>(center_e_Omega.begin(), l);
  s.width = Eigen::Map<const Eigen::VectorXd>(width.begin(), l);
  s.weights = NeuronVec::Zero(l);
  s.gamma = gamma;
  s.r_w = r_w;
  return s;
}

NeuronVec rbf_activation(const RbfSlice& slice, double e_R_j, double e_Omega_j) {
  const int l = slice.size();
  NeuronVec h(l);
  for (int k = 0; k < l; ++k) {
    const double dr = e_R_j - slice.center_e_R[k];
    const double dw = e_Omega_j - slice.center_e_Omega[k];
    const double b = slice.width[k];
    h[k] = std::exp(-(dr * dr + dw * dw) / (2.0 * b * b));
  }
  g_gaussian_evals += static_cast<std::uint64_t>(l);
  return h;
}

double nn_output(const RbfSlice& slice, double e_R_j, double e_Omega_j) {
  return slice.weights.dot(rbf_activation(slice, e_R_j, e_Omega_j));
}

NeuronVec weight_rate(const RbfSlice& slice, double e_R_j, double e_Omega_j, double c_R,
                      const NeuronVec& activation) {
  return slice.gamma * (e_Omega_j + c_R * e_R_j) * activation;
}

namespace {

void project_weights(RbfSlice& slice) {
  const double n = slice.weights.norm();
  if (n > slice.r_w) slice.weights *= slice.r_w / n;
}

}  // namespace

RbfSlice update_weights(const RbfSlice& slice, double e_R_j, double e_Omega_j, double c_R,
                        double dt) {
  RbfSlice next = slice;
  const NeuronVec h = rbf_activation(slice, e_R_j, e_Omega_j);
  next.weights += dt * weight_rate(slice, e_R_j, e_Omega_j, c_R, h);
  project_weights(next);
  return next;
}

double inertia_rate(const InertiaSlice& slice, double e_R_j, double e_Omega_j, double M_d_j,
                    double c_R) {
  const double drive = e_Omega_j + c_R * e_R_j;
  const double p = drive * M_d_j;
  const double gain = slice.J_bar * slice.J_bar / slice.eta;
  if (p > 0.0 || slice.J_bar < slice.J_max) {
    return -gain * drive * M_d_j;
  }
  return -slice.s * gain;
}

InertiaSlice update_inertia(const InertiaSlice& slice, double e_R_j, double e_Omega_j,
                            double M_d_j, double c_R, double dt) {
  InertiaSlice next = slice;
  next.J_bar += dt * inertia_rate(slice, e_R_j, e_Omega_j, M_d_j, c_R);
  next.J_bar = std::max(next.J_bar, slice.J_min);
  return next;
}

double reciprocal_error(double J_true, double J_bar) { return 1.0 / J_true - 1.0 / J_bar; }

SanmOutput sanm_step(const SanmState& state, const Vec3& e_R, const Vec3& e_Omega,
                     const Vec3& M_d_prev, double c_R, double dt) {
  SanmOutput out;
  out.next = state;
  for (int j = 0; j < 3; ++j) {
    const RbfSlice& rbf = state.rbf[j];
    const NeuronVec h = rbf_activation(rbf, e_R[j], e_Omega[j]);
    out.phi_bar[j] = rbf.weights.dot(h);
    out.J_bar[j] = state.inertia[j].J_bar;

    RbfSlice& rbf_next = out.next.rbf[j];
    rbf_next.weights += dt * weight_rate(rbf, e_R[j], e_Omega[j], c_R, h);
    project_weights(rbf_next);

    out.next.inertia[j] =
        update_inertia(state.inertia[j], e_R[j], e_Omega[j], M_d_prev[j], c_R, dt);
  }
  return out;
}

}  // namespace sanm::adapt
