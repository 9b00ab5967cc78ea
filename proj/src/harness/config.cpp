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

#include "sanm/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace sanm::harness {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& key, std::string_view v) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && (v[i] == ' ' || v[i] == '\t' || v[i] == ',')) ++i;
    if (i >= v.size()) break;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data() + i, v.data() + v.size(), x);
    if (ec != std::errc() || !std::isfinite(x)) invalid(key + ": bad number in '" + std::string(v) + "'");
    i = static_cast<std::size_t>(ptr - v.data());
    out.push_back(x);
  }
  return out;
}

double scalar(const std::string& key, std::string_view v) {
  const auto xs = parse_numbers(key, v);
  if (xs.size() != 1) invalid(key + ": expected one number");
  return xs[0];
}

Vec3 vec3(const std::string& key, std::string_view v) {
  const auto xs = parse_numbers(key, v);
  if (xs.size() != 3) invalid(key + ": expected three numbers");
  return {xs[0], xs[1], xs[2]};
}

std::array<double, 4> vec4(const std::string& key, std::string_view v) {
  const auto xs = parse_numbers(key, v);
  if (xs.size() != 4) invalid(key + ": expected four numbers");
  return {xs[0], xs[1], xs[2], xs[3]};
}

bool boolean(const std::string& key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  invalid(key + ": expected on/off");
}

adapt::NeuronVec neurons(const std::string& key, std::string_view v) {
  const auto xs = parse_numbers(key, v);
  if (xs.empty() || xs.size() > static_cast<std::size_t>(adapt::kMaxNeurons)) {
    invalid(key + ": neuron count out of range");
  }
  adapt::NeuronVec out(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) out[static_cast<Eigen::Index>(k)] = xs[k];
  return out;
}

using Setter = std::function<void(SimConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["plant.inertia"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.J = sim::InertiaTensor::from_vec(vec3(k, v));
    };
    t["plant.mass"] = [](SimConfig& c, const std::string& k, std::string_view v) { c.plant.mass = scalar(k, v); };
    t["plant.payload_mass"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.payload_mass = scalar(k, v);
    };
    t["plant.scenario"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      if (v == "known_inertia") c.plant.scenario = sim::ScenarioFlag::kKnownInertia;
      else if (v == "unknown_inertia") c.plant.scenario = sim::ScenarioFlag::kUnknownInertia;
      else invalid(k + ": expected known_inertia or unknown_inertia");
    };
    t["plant.initial_rotvec"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.initial_rotvec = vec3(k, v);
    };
    t["plant.initial_omega"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.initial_omega = vec3(k, v);
    };
    t["noise.omega_std"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.noise_omega_std = scalar(k, v);
    };
    t["noise.attitude_std"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.noise_attitude_std = scalar(k, v);
    };
    t["disturbance.kind"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      if (v == "none") c.plant.disturbance.kind = sim::DisturbanceKind::kNone;
      else if (v == "sinusoid") c.plant.disturbance.kind = sim::DisturbanceKind::kSinusoid;
      else if (v == "payload_proxy") c.plant.disturbance.kind = sim::DisturbanceKind::kPayloadProxy;
      else invalid(k + ": expected none, sinusoid or payload_proxy");
    };
    t["disturbance.amplitude"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.disturbance.amplitude = vec3(k, v);
    };
    t["disturbance.frequency"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.disturbance.frequency = vec3(k, v);
    };
    t["disturbance.phase"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.disturbance.phase = vec3(k, v);
    };
    t["disturbance.bias"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.disturbance.bias = vec3(k, v);
    };
    t["disturbance.coupling_gain"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.disturbance.coupling_gain = scalar(k, v);
    };
    t["disturbance.random_phase"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.random_phase = boolean(k, v);
    };
    t["allocation.arm_length"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.arm_length = scalar(k, v);
    };
    t["allocation.max_thrust"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.max_thrust = scalar(k, v);
    };
    t["allocation.thrust_coeff"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.thrust_coeff = vec4(k, v);
    };
    t["allocation.torque_ratio"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.torque_ratio = vec4(k, v);
    };
    t["allocation.thrust_perturbation"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.thrust_perturbation = vec4(k, v);
    };
    t["allocation.torque_perturbation"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.torque_perturbation = vec4(k, v);
    };
    t["allocation.arm_perturbation"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.plant.allocation.arm_perturbation = scalar(k, v);
    };
    t["controller.k_R"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.controller.gains.k_R = scalar(k, v);
    };
    t["controller.k_Omega"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.controller.gains.k_Omega = scalar(k, v);
    };
    t["controller.c_R"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.controller.gains.c_R = scalar(k, v);
    };
    t["controller.sanm"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.controller.sanm_enabled = boolean(k, v);
    };
    t["controller.feedforward"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      if (v == "none") c.controller.feedforward = Feedforward::kNone;
      else if (v == "oracle") c.controller.feedforward = Feedforward::kOracle;
      else invalid(k + ": expected none or oracle");
    };
    auto per_axis = [&t](const std::string& key, auto apply) {
      t[key] = [apply](SimConfig& c, const std::string& k, std::string_view v) {
        const Vec3 x = vec3(k, v);
        for (int j = 0; j < 3; ++j) apply(c.controller.sanm_init, j, x[j]);
      };
    };
    per_axis("sanm.eta", [](adapt::SanmState& s, int j, double x) { s.inertia[j].eta = x; });
    per_axis("sanm.scale", [](adapt::SanmState& s, int j, double x) { s.inertia[j].s = x; });
    per_axis("sanm.J_max", [](adapt::SanmState& s, int j, double x) { s.inertia[j].J_max = x; });
    per_axis("sanm.J_init", [](adapt::SanmState& s, int j, double x) { s.inertia[j].J_bar = x; });
    per_axis("sanm.gamma", [](adapt::SanmState& s, int j, double x) { s.rbf[j].gamma = x; });
    t["sanm.J_min"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      const double x = scalar(k, v);
      for (auto& s : c.controller.sanm_init.inertia) s.J_min = x;
    };
    t["sanm.r_w"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      const double x = scalar(k, v);
      for (auto& s : c.controller.sanm_init.rbf) s.r_w = x;
    };
    for (int j = 1; j <= 3; ++j) {
      const std::string axis = std::to_string(j);
      t["sanm.rbf." + axis + ".center_e_R"] = [j](SimConfig& c, const std::string& k, std::string_view v) {
        c.controller.sanm_init.rbf[j - 1].center_e_R = neurons(k, v);
      };
      t["sanm.rbf." + axis + ".center_e_Omega"] = [j](SimConfig& c, const std::string& k, std::string_view v) {
        c.controller.sanm_init.rbf[j - 1].center_e_Omega = neurons(k, v);
      };
      t["sanm.rbf." + axis + ".width"] = [j](SimConfig& c, const std::string& k, std::string_view v) {
        c.controller.sanm_init.rbf[j - 1].width = neurons(k, v);
      };
      t["sanm.rbf." + axis + ".weights"] = [j](SimConfig& c, const std::string& k, std::string_view v) {
        c.controller.sanm_init.rbf[j - 1].weights = neurons(k, v);
      };
    }
    t["trajectory.kind"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      if (v == "fixed_hover") c.trajectory.kind = control::TrajectoryKind::kFixedHover;
      else if (v == "heading_spin") c.trajectory.kind = control::TrajectoryKind::kHeadingSpin;
      else if (v == "attitude_waypoints") c.trajectory.kind = control::TrajectoryKind::kAttitudeWaypoints;
      else invalid(k + ": unknown trajectory kind");
    };
    t["trajectory.b1d"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.trajectory.b1d_fixed = vec3(k, v);
    };
    t["trajectory.heading_rate"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.trajectory.heading_rate = scalar(k, v);
    };
    t["trajectory.heading_offset"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.trajectory.heading_offset = scalar(k, v);
    };
    t["trajectory.waypoints"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      const auto xs = parse_numbers(k, v);
      if (xs.empty() || xs.size() % 4 != 0) invalid(k + ": expected groups of 't roll pitch yaw'");
      c.trajectory.waypoints.clear();
      for (std::size_t i = 0; i < xs.size(); i += 4) {
        c.trajectory.waypoints.push_back({xs[i], xs[i + 1], xs[i + 2], xs[i + 3]});
      }
    };
    t["run.dt"] = [](SimConfig& c, const std::string& k, std::string_view v) { c.run.dt = scalar(k, v); };
    t["run.duration"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      c.run.duration = scalar(k, v);
    };
    t["run.seed"] = [](SimConfig& c, const std::string& k, std::string_view v) {
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || ptr != v.data() + v.size()) invalid(k + ": expected unsigned integer");
      c.run.seed = seed;
    };
    t["run.output"] = [](SimConfig& c, const std::string&, std::string_view v) { c.run.output = std::string(v); };
    return t;
  }();
  return table;
}

}  // namespace

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::llround(run.duration / run.dt));
}

void SimConfig::validate() const {
  if (!(run.dt > 0.0 && run.dt <= sim::kMaxStep)) invalid("run.dt must be in (0, 0.01]");
  if (!(run.duration > 0.0)) invalid("run.duration must be positive");
  if (!plant.J.valid()) invalid("plant.inertia must be positive");
  if (!(plant.mass > 0.0) || plant.payload_mass < 0.0) invalid("plant masses out of range");
  if (!plant.disturbance.valid()) invalid("disturbance parameters must be finite, frequencies >= 0");
  if (!plant.allocation.valid()) invalid("allocation coefficients/perturbations out of range");
  if (plant.noise_omega_std < 0.0 || plant.noise_attitude_std < 0.0) invalid("noise std must be >= 0");
  if (!controller.gains.valid()) invalid("controller gains must be positive");
  if (!controller.sanm_init.valid()) invalid("sanm slice parameters violate their invariants");
  if (controller.sanm_enabled && controller.feedforward == Feedforward::kOracle) {
    invalid("controller.feedforward = oracle requires controller.sanm = off");
  }
  const int l = controller.sanm_init.rbf[0].size();
  for (const auto& s : controller.sanm_init.rbf) {
    if (s.size() != l) invalid("all RBF slices must have the same neuron count");
  }
  if (trajectory.kind == control::TrajectoryKind::kAttitudeWaypoints) {
    if (trajectory.waypoints.empty()) invalid("attitude_waypoints needs at least one waypoint");
    for (std::size_t i = 1; i < trajectory.waypoints.size(); ++i) {
      if (!(trajectory.waypoints[i].t > trajectory.waypoints[i - 1].t)) {
        invalid("waypoint times must be strictly increasing");
      }
    }
  }
  if (std::abs(trajectory.b1d_fixed.norm() - 1.0) > 1e-9) invalid("trajectory.b1d must be unit norm");
}

SimConfig default_config() {
  SimConfig c;
  c.plant.disturbance.kind = sim::DisturbanceKind::kNone;
  c.trajectory.hover_force = Vec3(0.0, 0.0, -(c.plant.mass + c.plant.payload_mass) * 9.81);

  const Vec3 eta(0.01, 0.01, 0.05);
  const Vec3 j_max(0.03, 0.03, 0.04);
  const Vec3 j_init(0.01, 0.02, 0.02);
  const Vec3 gamma(120.0, 120.0, 50.0);
  auto& s = c.controller.sanm_init;
  for (int j = 0; j < 3; ++j) {
    s.inertia[j] = {j_init[j], eta[j], 0.02, j_max[j], 1e-4};
  }
  s.rbf[0] = adapt::make_rbf_slice({-1, -0.5, 0, 0.5, 1}, {-10, -5, 0, 5, 10}, {2, 2, 2, 2, 2}, gamma[0], 50.0);
  s.rbf[1] = adapt::make_rbf_slice({-1, -0.5, 0, 0.5, 1}, {-10, -5, 0, 5, 10}, {2, 2, 2, 2, 2}, gamma[1], 50.0);
  s.rbf[2] = adapt::make_rbf_slice({-1, -0.5, 0, 0.5, 1}, {-6, -3, 0, 3, 6}, {3, 3, 3, 3, 3}, gamma[2], 50.0);
  return c;
}

SimConfig parse_config(std::string_view text, SimConfig base) {
  const auto& table = setters();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) invalid("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) invalid("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(base, key, value);
  }
  // Keep weights sized to the configured centers.
  for (auto& slice : base.controller.sanm_init.rbf) {
    if (slice.weights.size() != slice.center_e_R.size()) {
      slice.weights = adapt::NeuronVec::Zero(slice.center_e_R.size());
    }
  }
  base.trajectory.hover_force = Vec3(0.0, 0.0, -(base.plant.mass + base.plant.payload_mass) * 9.81);
  return base;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sanm::harness
