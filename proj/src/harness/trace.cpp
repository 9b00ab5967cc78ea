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

#include "sanm/harness/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "sanm/errors.hpp"

namespace sanm::harness {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

double to_double(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // from_chars rejects "inf"/"nan" spelled by printf on some libcs.
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan" || s == "-nan") return NAN;
    parse_error("bad number '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? line.size() - pos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

void push_mat(std::vector<double>& v, const Mat3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v.push_back(m(i, j));
}

void push_vec(std::vector<double>& v, const Vec3& x) { v.insert(v.end(), {x[0], x[1], x[2]}); }

std::vector<double> flatten(const TraceRow& r) {
  std::vector<double> v;
  v.reserve(80 + r.weights.size());
  v.push_back(r.t);
  push_mat(v, r.R);
  push_vec(v, r.Omega);
  push_mat(v, r.Rd);
  push_vec(v, r.Omega_d);
  push_vec(v, r.e_R);
  push_vec(v, r.e_Omega);
  v.push_back(r.psi);
  for (const Vec3* x : {&r.M_d, &r.M, &r.delta_M, &r.phi_true, &r.phi_bar, &r.J_bar, &r.weight_norms}) {
    push_vec(v, *x);
  }
  v.insert(v.end(), r.weights.begin(), r.weights.end());
  v.push_back(r.V_Rs);
  v.push_back(r.V_Re);
  v.push_back(r.V_R);
  return v;
}

TraceRow unflatten(const std::vector<double>& v, int neurons) {
  TraceRow r;
  std::size_t i = 0;
  auto mat = [&](Mat3& m) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = v[i++];
  };
  auto vec = [&](Vec3& x) {
    for (int a = 0; a < 3; ++a) x[a] = v[i++];
  };
  r.t = v[i++];
  mat(r.R);
  vec(r.Omega);
  mat(r.Rd);
  vec(r.Omega_d);
  vec(r.e_R);
  vec(r.e_Omega);
  r.psi = v[i++];
  for (Vec3* x : {&r.M_d, &r.M, &r.delta_M, &r.phi_true, &r.phi_bar, &r.J_bar, &r.weight_norms}) vec(*x);
  r.weights.assign(v.begin() + static_cast<std::ptrdiff_t>(i),
                   v.begin() + static_cast<std::ptrdiff_t>(i + 3 * static_cast<std::size_t>(neurons)));
  i += 3 * static_cast<std::size_t>(neurons);
  r.V_Rs = v[i++];
  r.V_Re = v[i++];
  r.V_R = v[i++];
  return r;
}

}  // namespace

double TraceRow::z_norm() const { return std::hypot(e_R.norm(), e_Omega.norm()); }

const std::string& SimTrace::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  parse_error("trace metadata lacks '" + key + "'");
}

bool SimTrace::has_meta(const std::string& key) const {
  for (const auto& kv : meta)
    if (kv.first == key) return true;
  return false;
}

void SimTrace::set_meta(const std::string& key, std::string value) {
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta.emplace_back(key, std::move(value));
}

double SimTrace::meta_number(const std::string& key) const { return to_double(meta_value(key)); }

Vec3 SimTrace::meta_vec3(const std::string& key) const {
  const auto parts = split(meta_value(key), ' ');
  if (parts.size() != 3) parse_error("metadata '" + key + "' is not a 3-vector");
  return {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
}

std::vector<double> SimTrace::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.t);
  return out;
}

std::vector<double> SimTrace::z_norms() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.z_norm());
  return out;
}

std::vector<double> SimTrace::V_R() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.V_R);
  return out;
}

double SimTrace::dt() const {
  if (has_meta("dt")) return meta_number("dt");
  if (rows.size() < 2) parse_error("cannot infer dt from fewer than two rows");
  return rows[1].t - rows[0].t;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_vec3(const Vec3& v) {
  return format_double(v[0]) + " " + format_double(v[1]) + " " + format_double(v[2]);
}

std::vector<std::string> trace_columns(int neurons) {
  std::vector<std::string> c{"t"};
  auto mat = [&c](const std::string& n) {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) c.push_back(n + std::to_string(i) + std::to_string(j));
  };
  auto vec = [&c](const std::string& n) {
    for (int i = 1; i <= 3; ++i) c.push_back(n + "_" + std::to_string(i));
  };
  mat("R");
  vec("Omega");
  mat("Rd");
  vec("Omega_d");
  vec("e_R");
  vec("e_Omega");
  c.push_back("Psi_R");
  for (const char* n : {"M_d", "M", "delta_M", "phi", "phi_bar", "J_bar", "W_norm"}) vec(n);
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= neurons; ++k) c.push_back("W" + std::to_string(j) + "_" + std::to_string(k));
  c.insert(c.end(), {"V_Rs", "V_Re", "V_R"});
  return c;
}

void write_trace(const SimTrace& trace, std::ostream& out) {
  for (const auto& [k, v] : trace.meta) out << "# " << k << '=' << v << '\n';
  out << "# neurons=" << trace.neurons << '\n';
  const auto cols = trace_columns(trace.neurons);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  std::string line;
  for (const auto& row : trace.rows) {
    if (row.weights.size() != 3 * static_cast<std::size_t>(trace.neurons)) {
      throw Error(ErrorCode::kShapeMismatch, "trace row weight count does not match neurons");
    }
    line.clear();
    const auto v = flatten(row);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) line += ',';
      line += format_double(v[i]);
    }
    out << line << '\n';
  }
}

SimTrace read_trace(std::istream& in) {
  SimTrace trace;
  std::string line;
  bool have_header = false;
  bool have_neurons = false;
  std::size_t ncols = 0;
  std::vector<double> values;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      if (have_header) parse_error("metadata after header at line " + std::to_string(line_no));
      const auto eq = line.find('=');
      if (eq == std::string::npos) parse_error("bad metadata line " + std::to_string(line_no));
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "neurons") {
        trace.neurons = static_cast<int>(to_double(value));
        have_neurons = true;
      } else {
        trace.meta.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    if (!have_header) {
      if (!have_neurons) parse_error("trace lacks '# neurons=' metadata");
      const auto cols = trace_columns(trace.neurons);
      const auto got = split(line, ',');
      if (got.size() != cols.size()) parse_error("header has " + std::to_string(got.size()) + " columns");
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (got[i] != cols[i]) parse_error("unexpected column '" + std::string(got[i]) + "'");
      }
      ncols = cols.size();
      have_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != ncols) parse_error("line " + std::to_string(line_no) + ": wrong field count");
    values.clear();
    for (const auto f : fields) values.push_back(to_double(f));
    trace.rows.push_back(unflatten(values, trace.neurons));
  }
  if (!have_header) parse_error("trace has no header row");
  return trace;
}

void save_trace(const SimTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + path.string());
  write_trace(trace, out);
}

SimTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open trace " + path.string());
  return read_trace(in);
}

}  // namespace sanm::harness
