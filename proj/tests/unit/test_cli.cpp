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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(SANM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sanm_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string cfg(const std::string& name) { return std::string(SANM_CONFIG_DIR) + "/" + name; }

TEST(Cli, AuditPassesOnPaperGains) { EXPECT_EQ(run("audit-gains --config " + cfg("experiment1.cfg")), 0); }

TEST(Cli, AuditFailsOnLargeCR) {
  const auto path = scratch("large_cr.cfg");
  std::ofstream(path) << "controller.c_R = 2.0\n";
  EXPECT_EQ(run("audit-gains --config " + path.string()), 2);
}

TEST(Cli, BadPsiIsValidationError) {
  EXPECT_EQ(run("audit-gains --config " + cfg("experiment1.cfg") + " --psi 2.5"), 1);
}

TEST(Cli, UnknownConfigKeyIsValidationError) {
  const auto path = scratch("bad.cfg");
  std::ofstream(path) << "controller.gain = 3\n";
  EXPECT_EQ(run("simulate --config " + path.string()), 1);
}

TEST(Cli, MissingSubcommandIsValidationError) { EXPECT_EQ(run(""), 1); }

TEST(Cli, SimulateFitVerifyCompare) {
  const auto short_cfg = scratch("short.cfg");
  {
    std::ifstream in(cfg("nominal.cfg"));
    std::ofstream out(short_cfg);
    out << in.rdbuf() << "\nrun.duration = 4\n";
  }
  const auto on = scratch("on.csv"), off = scratch("off.csv"), summary = scratch("summary.txt");
  ASSERT_EQ(run("simulate --config " + short_cfg.string() + " --out " + on.string()), 0);
  ASSERT_EQ(run("simulate --config " + short_cfg.string() + " --sanm off --out " + off.string()), 0);
  EXPECT_EQ(run("fit --trace " + on.string()), 0);
  EXPECT_EQ(run("verify-lyapunov --trace " + on.string() + " --cr 0"), 0);
  EXPECT_EQ(run("--summary " + summary.string() + " compare --on " + on.string() + " --off " + off.string()), 0);
  std::ifstream in(summary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("eps_ratio="), std::string::npos);
}

TEST(Cli, FitWithoutTransientIsAnalysisFailure) {
  const auto path = scratch("rest.cfg");
  std::ofstream(path) << "plant.scenario = known_inertia\nsanm.J_init = 0.011 0.020 0.023\nrun.duration = 1\n";
  const auto trace = scratch("rest.csv");
  ASSERT_EQ(run("simulate --config " + path.string() + " --out " + trace.string()), 0);
  EXPECT_EQ(run("fit --trace " + trace.string()), 2);
}

TEST(Cli, BenchReportsFifteenEvaluations) {
  const auto summary = scratch("bench.txt");
  EXPECT_EQ(run("--summary " + summary.string() + " bench --iters 20000"), 0);
  std::ifstream in(summary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("gaussian_evals_per_step=15\n"), std::string::npos);
}

}  // namespace
