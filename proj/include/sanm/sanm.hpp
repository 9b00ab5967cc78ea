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
#include <cstdint>

#include "sanm/so3.hpp"

// Sliced adaptive-neuro mapping: per body axis, one bounded adaptive inertia
// estimator and one 2-input Gaussian RBF network, each driven only by that
// axis' errors (e_R[j], e_Omega[j]).
namespace sanm::adapt {

inline constexpr int kMaxNeurons = 32;

/// Neuron-indexed vector; fixed capacity so SanmState copies never allocate.
using NeuronVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxNeurons, 1>;

struct RbfSlice {
  NeuronVec center_e_R;      // first input coordinate of each center
  NeuronVec center_e_Omega;  // second input coordinate
  NeuronVec width;           // b_k > 0
  NeuronVec weights;
  double gamma = 1.0;        // adaptation rate
  double r_w = 50.0;         // weight-norm cap

  int size() const { return static_cast<int>(weights.size()); }
  bool valid() const;
};

struct InertiaSlice {
  double J_bar = 0.01;  // kg m^2
  double eta = 0.01;    // 1 / update rate
  double s = 0.02;      // pull-back scaling
  double J_max = 0.03;
  double J_min = 1e-4;

  bool valid() const;
};

struct SanmState {
  std::array<InertiaSlice, 3> inertia;
  std::array<RbfSlice, 3> rbf;

  bool valid() const;
  Vec3 J_bar() const { return {inertia[0].J_bar, inertia[1].J_bar, inertia[2].J_bar}; }
  Vec3 weight_norms() const {
    return {rbf[0].weights.norm(), rbf[1].weights.norm(), rbf[2].weights.norm()};
  }
};

/// Slice with l neurons, zero weights, and the given center rows / widths.
RbfSlice make_rbf_slice(std::initializer_list<double> center_e_R,
                        std::initializer_list<double> center_e_Omega,
                        std::initializer_list<double> width, double gamma, double r_w);

/// Number of Gaussian evaluations performed on this thread so far.
std::uint64_t gaussian_eval_count();
void reset_gaussian_eval_count();

/// h_k(x) = exp(-|x - c_k|^2 / (2 b_k^2)), x = (e_R[j], e_Omega[j]).
NeuronVec rbf_activation(const RbfSlice& slice, double e_R_j, double e_Omega_j);

/// W^T h(x)
double nn_output(const RbfSlice& slice, double e_R_j, double e_Omega_j);

/// dW/dt = gamma (e_Omega[j] + c_R e_R[j]) h(x). Kept separate so the
/// update site can be checked against the law term by term.
NeuronVec weight_rate(const RbfSlice& slice, double e_R_j, double e_Omega_j, double c_R,
                      const NeuronVec& activation);

/// Forward-Euler weight step, then radial projection onto |W| <= r_w.
RbfSlice update_weights(const RbfSlice& slice, double e_R_j, double e_Omega_j, double c_R,
                        double dt);

/// dJ_bar/dt from the three-case bounded law. With p = (e_Omega + c_R e_R) M_d:
///   p > 0                  : -(J_bar^2 / eta) (e_Omega + c_R e_R) M_d
///   p <= 0, J_bar <  J_max : same expression
///   p <= 0, J_bar >= J_max : -s J_bar^2 / eta
double inertia_rate(const InertiaSlice& slice, double e_R_j, double e_Omega_j, double M_d_j,
                    double c_R);

/// Forward-Euler inertia step, floored at J_min.
InertiaSlice update_inertia(const InertiaSlice& slice, double e_R_j, double e_Omega_j,
                            double M_d_j, double c_R, double dt);

/// Reciprocal estimation error 1/J - 1/J_bar.
double reciprocal_error(double J_true, double J_bar);

struct SanmOutput {
  SanmState next;
  Vec3 J_bar = Vec3::Zero();    // estimates for the current control step
  Vec3 phi_bar = Vec3::Zero();
};

/// One control step of all six slices.
///
/// The returned estimates are those held at entry, evaluated at the current
/// errors; `next` carries the forward-Euler update driven by the current
/// errors and the previous step's M_d. Each slice evaluates its Gaussians
/// exactly once per call (3 l evaluations total).
SanmOutput sanm_step(const SanmState& state, const Vec3& e_R, const Vec3& e_Omega,
                     const Vec3& M_d_prev, double c_R, double dt);

}  // namespace sanm::adapt
