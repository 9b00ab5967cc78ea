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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sanm/so3.hpp"

namespace sanm::harness {

/// One logged control step. Values are the ones in force at time t, before
/// the plant is advanced.
struct TraceRow {
  double t = 0.0;
  Mat3 R = Mat3::Identity();
  Vec3 Omega = Vec3::Zero();
  Mat3 Rd = Mat3::Identity();
  Vec3 Omega_d = Vec3::Zero();
  Vec3 e_R = Vec3::Zero();
  Vec3 e_Omega = Vec3::Zero();
  double psi = 0.0;
  Vec3 M_d = Vec3::Zero();
  Vec3 M = Vec3::Zero();
  Vec3 delta_M = Vec3::Zero();
  Vec3 phi_true = Vec3::Zero();
  Vec3 phi_bar = Vec3::Zero();
  Vec3 J_bar = Vec3::Zero();
  Vec3 weight_norms = Vec3::Zero();
  std::vector<double> weights;  // 3 l entries, axis-major
  double V_Rs = 0.0;
  double V_Re = 0.0;
  double V_R = 0.0;

  double z_norm() const;  // |(|e_R|, |e_Omega|)|
};

struct SimTrace {
  std::vector<std::pair<std::string, std::string>> meta;
  int neurons = 0;
  std::vector<TraceRow> rows;

  /// Throws Error(kParse) when the key is missing.
  const std::string& meta_value(const std::string& key) const;
  double meta_number(const std::string& key) const;
  Vec3 meta_vec3(const std::string& key) const;
  bool has_meta(const std::string& key) const;
  void set_meta(const std::string& key, std::string value);

  std::vector<double> times() const;
  std::vector<double> z_norms() const;
  std::vector<double> V_R() const;
  double dt() const;
};

std::string format_double(double x);
std::string format_vec3(const Vec3& v);

std::vector<std::string> trace_columns(int neurons);

void write_trace(const SimTrace& trace, std::ostream& out);
/// Throws Error(kParse) on malformed input.
SimTrace read_trace(std::istream& in);

void save_trace(const SimTrace& trace, const std::filesystem::path& path);
SimTrace load_trace(const std::filesystem::path& path);

}  // namespace sanm::harness
