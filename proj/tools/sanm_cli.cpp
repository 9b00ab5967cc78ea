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

// Command-line front end: simulate, compare, audit-gains, fit,
// verify-lyapunov, bench.
//
// Exit codes: 0 success, 1 validation error, 2 analysis failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sanm/harness/bench.hpp"
#include "sanm/harness/config.hpp"
#include "sanm/harness/log.hpp"
#include "sanm/harness/metrics.hpp"
#include "sanm/harness/runner.hpp"
#include "sanm/harness/trace.hpp"
#include "sanm/stability.hpp"

namespace {

using namespace sanm;
using harness::format_double;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAnalysis = 2;

class Summary {
 public:
  void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

  void emit(const std::string& summary_path) const {
    std::ostringstream ss;
    for (const auto& [k, v] : kv_) ss << k << '=' << v << '\n';
    std::cout << '\n' << ss.str();
    if (!summary_path.empty()) {
      std::ofstream out(summary_path);
      if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + summary_path);
      out << ss.str();
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

control::ControllerGains gains_from_trace(const harness::SimTrace& tr) {
  return {tr.meta_number("k_R"), tr.meta_number("k_Omega"), tr.meta_number("c_R")};
}

double max_psi(const harness::SimTrace& tr) {
  double m = 0.0;
  for (const auto& r : tr.rows) m = std::max(m, r.psi);
  return m;
}

void add_metrics(Summary& s, const std::string& prefix, const harness::RunMetrics& m) {
  s.add(prefix + "rms_e_R", m.rms_e_R);
  s.add(prefix + "rms_e_Omega", m.rms_e_Omega);
  s.add(prefix + "settling_time", m.settling_time);
  s.add(prefix + "eps_hat", m.eps_hat);
  if (m.mean_latency_us) s.add(prefix + "mean_latency_us", *m.mean_latency_us);
  if (m.p99_latency_us) s.add(prefix + "p99_latency_us", *m.p99_latency_us);
}

int cmd_simulate(const std::string& config_path, const std::string& sanm_flag,
                 std::optional<std::uint64_t> seed, const std::string& out, const std::string& summary) {
  harness::SimConfig cfg = harness::load_config(config_path);
  if (sanm_flag == "on") cfg.controller.sanm_enabled = true;
  else if (sanm_flag == "off") cfg.controller.sanm_enabled = false;
  if (seed) cfg.run.seed = *seed;
  const std::string path = out.empty() ? cfg.run.output : out;

  harness::RunStats stats;
  const auto trace = harness::run_scenario(cfg, &stats, true);
  harness::save_trace(trace, path);
  auto m = harness::compute_metrics(trace);
  harness::attach_latency(m, stats);

  std::printf("simulated %zu steps (dt %.4g s, sanm %s, seed %llu) -> %s\n", stats.steps, cfg.run.dt,
              cfg.controller.sanm_enabled ? "on" : "off", static_cast<unsigned long long>(cfg.run.seed),
              path.c_str());
  std::printf("tail rms |e_R| %.4g, |e_Omega| %.4g; eps_hat %.4g; settling %.4g s\n", m.rms_e_R,
              m.rms_e_Omega, m.eps_hat, m.settling_time);
  if (stats.infeasible_steps) std::printf("warning: %zu steps hit an infeasible wrench\n", stats.infeasible_steps);

  Summary s;
  s.add("trace", path);
  s.add("steps", stats.steps);
  s.add("infeasible_steps", stats.infeasible_steps);
  add_metrics(s, "", m);
  s.emit(summary);
  return kExitOk;
}

int cmd_compare(const std::string& on_path, const std::string& off_path, double tail, const std::string& summary) {
  const auto on = harness::load_trace(on_path);
  const auto off = harness::load_trace(off_path);
  const auto c = harness::compare_runs(on, off, tail);
  std::printf("%-14s %12s %12s %12s\n", "metric", "sanm on", "sanm off", "on/off");
  std::printf("%-14s %12.5g %12.5g %12.5g\n", "eps_hat", c.on.eps_hat, c.off.eps_hat, c.eps_ratio);
  std::printf("%-14s %12.5g %12.5g %12.5g\n", "rms |e_R|", c.on.rms_e_R, c.off.rms_e_R, c.rms_e_R_ratio);
  std::printf("%-14s %12.5g %12.5g %12.5g\n", "rms |e_Omega|", c.on.rms_e_Omega, c.off.rms_e_Omega,
              c.rms_e_Omega_ratio);
  std::printf("%-14s %12.5g %12.5g\n", "settling [s]", c.on.settling_time, c.off.settling_time);
  Summary s;
  add_metrics(s, "on.", c.on);
  add_metrics(s, "off.", c.off);
  s.add("eps_ratio", c.eps_ratio);
  s.add("rms_e_R_ratio", c.rms_e_R_ratio);
  s.add("rms_e_Omega_ratio", c.rms_e_Omega_ratio);
  s.add("delta_eps", c.delta_eps);
  s.add("delta_rms_e_R", c.delta_rms_e_R);
  s.add("delta_rms_e_Omega", c.delta_rms_e_Omega);
  s.add("delta_settling", c.delta_settling);
  s.emit(summary);
  return kExitOk;
}

int cmd_audit(const std::string& config_path, std::optional<double> psi, const std::string& trace_path,
              const std::string& summary) {
  const auto cfg = harness::load_config(config_path);
  double psi_R = 1.0;
  if (psi) {
    psi_R = *psi;
  } else if (!trace_path.empty()) {
    psi_R = std::min(1.99, max_psi(harness::load_trace(trace_path)));
  }
  const auto r = stability::check_gains(cfg.controller.gains, psi_R);
  const auto& g = cfg.controller.gains;
  std::printf("gains k_R %.6g  k_Omega %.6g  c_R %.6g  (psi_R %.6g)\n", g.k_R, g.k_Omega, g.c_R, psi_R);
  std::printf("c_R bound terms: %.6g %.6g %.6g %.6g -> bound %.6g  [%s]\n", r.c_R_terms[0], r.c_R_terms[1],
              r.c_R_terms[2], r.c_R_terms[3], r.c_R_bound, r.c_R_ok ? "ok" : "VIOLATED");
  std::printf("eig M_R1 %.6g %.6g\neig M_R2 %.6g %.6g\neig M_R  %.6g %.6g\npositive definite: %s\n",
              r.eigs_M_R1[0], r.eigs_M_R1[1], r.eigs_M_R2[0], r.eigs_M_R2[1], r.eigs_M_R[0], r.eigs_M_R[1],
              r.all_pd ? "yes" : "NO");
  Summary s;
  s.add("psi_R", psi_R);
  s.add("c_R_bound", r.c_R_bound);
  s.add("c_R_ok", r.c_R_ok);
  s.add("lambda_min_M_R1", r.eigs_M_R1[0]);
  s.add("lambda_max_M_R2", r.eigs_M_R2[1]);
  s.add("lambda_min_M_R", r.eigs_M_R[0]);
  s.add("all_pd", r.all_pd);
  s.emit(summary);
  return r.c_R_ok && r.all_pd ? kExitOk : kExitAnalysis;
}

int cmd_fit(const std::string& trace_path, double tail, const std::string& summary) {
  const auto tr = harness::load_trace(trace_path);
  const auto t = tr.times();
  const auto z = tr.z_norms();
  stability::EnvelopeFit f;
  try {
    f = stability::fit_envelope(t, z, tail);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoTransient) throw;
    std::printf("no transient: %s\n", e.what());
    Summary s;
    s.add("error", std::string(to_string(e.code())));
    s.emit(summary);
    return kExitAnalysis;
  }
  std::printf("|z(t)| <= %.5g |z(0)| exp(-%.5g t) + %.5g   (rms log residual %.3g, %zu samples to t=%.4g s)\n",
              f.alpha_hat, f.beta_hat, f.eps_hat, f.residual, f.fit_samples, f.fit_end_time);
  Summary s;
  s.add("alpha_hat", f.alpha_hat);
  s.add("beta_hat", f.beta_hat);
  s.add("eps_hat", f.eps_hat);
  s.add("residual", f.residual);
  s.add("fit_samples", f.fit_samples);
  s.emit(summary);
  return kExitOk;
}

int cmd_verify(const std::string& trace_path, const std::string& cr, double floor, double tail,
               const std::string& summary) {
  const auto tr = harness::load_trace(trace_path);
  const auto g = gains_from_trace(tr);
  double C_R = 0.0;
  if (cr != "auto") {
    C_R = std::stod(cr);
  } else {
    // Steady-state tail maxima of the estimation and allocation errors.
    if (!(tail > 0.0 && tail <= 1.0)) throw Error(ErrorCode::kInvalidConfig, "--tail must be in (0, 1]");
    const std::size_t n = tr.rows.size();
    const auto first = n - std::max<std::size_t>(1, static_cast<std::size_t>(tail * static_cast<double>(n)));
    double eps_R = 0.0, eps_M = 0.0;
    for (std::size_t i = first; i < n; ++i) {
      const auto& r = tr.rows[i];
      eps_R = std::max(eps_R, (r.phi_true - r.phi_bar).norm());
      eps_M = std::max(eps_M, r.delta_M.norm());
    }
    C_R = stability::c_r_constant(eps_R, eps_M, tr.meta_vec3("J").minCoeff(), g);
  }
  const auto t = tr.times();
  const auto V = tr.V_R();
  const auto z = tr.z_norms();
  const auto rep = stability::verify_decrease(t, V, z, g, C_R, floor);
  std::printf("dV_R/dt <= -%.5g |z|^2 + %.5g (+ tol %.3g): %zu/%zu samples pass (%.4f) [%s]\n", rep.lambda_min,
              rep.C_R, rep.tol, rep.passed, rep.checked, rep.pass_fraction, rep.ok ? "ok" : "FAIL");
  const std::size_t shown = std::min<std::size_t>(rep.violation_times.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) std::printf("  violation at t=%.6g\n", rep.violation_times[i]);
  Summary s;
  s.add("lambda_min_M_R", rep.lambda_min);
  s.add("C_R", rep.C_R);
  s.add("checked", rep.checked);
  s.add("passed", rep.passed);
  s.add("pass_fraction", rep.pass_fraction);
  s.add("ok", rep.ok);
  s.emit(summary);
  return rep.ok ? kExitOk : kExitAnalysis;
}

int cmd_bench(const std::string& config_path, std::size_t iters, double budget_us, const std::string& summary) {
  const auto cfg = config_path.empty() ? harness::default_config() : harness::load_config(config_path);
  const auto b = harness::bench_step(cfg, iters);
  std::printf("%zu steps: mean %.3f us, p99 %.3f us, max %.3f us; %.1f Gaussian evals/step (3 l = %d)\n",
              b.iterations, b.mean_us, b.p99_us, b.max_us, b.gaussian_evals_per_step, 3 * b.neurons);
  const bool within = b.p99_us <= budget_us;
  Summary s;
  s.add("iterations", b.iterations);
  s.add("mean_us", b.mean_us);
  s.add("p99_us", b.p99_us);
  s.add("max_us", b.max_us);
  s.add("gaussian_evals_per_step", b.gaussian_evals_per_step);
  s.add("eval_count_ok", b.eval_count_ok);
  s.add("within_budget", within);
  s.emit(summary);
  return b.eval_count_ok && within ? kExitOk : kExitAnalysis;
}

}  // namespace

int main(int argc, char** argv) {
  harness::init_logging();
  CLI::App app{"Sliced adaptive-neuro attitude control harness"};
  app.require_subcommand(1);
  std::string summary;
  app.add_option("--summary", summary, "also write key=value summary to this file");

  std::string config, sanm_flag, out, on, off, trace, cr = "auto";
  std::optional<std::uint64_t> seed;
  std::optional<double> psi;
  double tail = harness::kDefaultTailFraction;
  double floor = 1e-6;
  double budget = 50.0;
  std::size_t iters = 100000;

  auto* sim = app.add_subcommand("simulate", "run one closed-loop scenario and write a trace CSV");
  sim->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sim->add_option("--sanm", sanm_flag)->check(CLI::IsMember({"on", "off"}));
  sim->add_option("--seed", seed);
  sim->add_option("--out", out);

  auto* cmp = app.add_subcommand("compare", "tail metrics of a SANM-on trace against a SANM-off trace");
  cmp->add_option("--on", on)->required()->check(CLI::ExistingFile);
  cmp->add_option("--off", off)->required()->check(CLI::ExistingFile);
  cmp->add_option("--tail", tail);

  auto* aud = app.add_subcommand("audit-gains", "check the gain conditions and bound matrices");
  aud->add_option("--config", config)->required()->check(CLI::ExistingFile);
  aud->add_option("--psi", psi, "psi_R bound in (0, 2); default from --trace, else 1");
  aud->add_option("--trace", trace)->check(CLI::ExistingFile);

  auto* fit = app.add_subcommand("fit", "fit an exponential envelope to |z_R(t)|");
  fit->add_option("--trace", trace)->required()->check(CLI::ExistingFile);
  fit->add_option("--tail", tail);

  auto* ver = app.add_subcommand("verify-lyapunov", "check the logged dV_R/dt against its bound");
  ver->add_option("--trace", trace)->required()->check(CLI::ExistingFile);
  ver->add_option("--cr", cr, "C_R value, or 'auto' to bound it from the trace");
  ver->add_option("--floor", floor, "skip samples with |z| at or below this");
  ver->add_option("--tail", tail, "tail fraction used by --cr auto");

  auto* ben = app.add_subcommand("bench", "time the controller + SANM step");
  ben->add_option("--iters", iters);
  ben->add_option("--config", config)->check(CLI::ExistingFile);
  ben->add_option("--budget-us", budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config, sanm_flag, seed, out, summary);
    if (cmp->parsed()) return cmd_compare(on, off, tail, summary);
    if (aud->parsed()) return cmd_audit(config, psi, trace, summary);
    if (fit->parsed()) return cmd_fit(trace, tail, summary);
    if (ver->parsed()) return cmd_verify(trace, cr, floor, tail, summary);
    if (ben->parsed()) return cmd_bench(config, iters, budget, summary);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
