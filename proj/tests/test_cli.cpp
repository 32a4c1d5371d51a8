/* Copyright 2026 The polygibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "polygibbs/commands.hpp"

namespace polygibbs {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / ("polygibbs_cli_" + std::string(info->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write_config(const std::string& name, const json& j) const {
    const fs::path p = root_ / name;
    std::ofstream(p) << j.dump(1);
    return p;
  }
  CommandOptions options(const fs::path& config) {
    CommandOptions o;
    o.config = config;
    o.console = &console_;
    o.errors = &errors_;
    return o;
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  static std::size_t data_rows(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n == 0 ? 0 : n - 1;
  }

  fs::path root_;
  std::ostringstream console_, errors_;
};

json model1_config(double lambda, std::uint64_t sweeps = 1000) {
  return {{"model", {{"type", "model1"}, {"n", 1}, {"b", {{"1", 1}, {"-1", 1}}}, {"lambda", lambda}}},
          {"lattice", {{"dim", 1}, {"L", 8}, {"bc", "torus"}}},
          {"sampler", {{"sweeps", sweeps}, {"burnin", 100}, {"thin", 2}, {"seed", 5}}},
          {"analysis", {{"observable", "tanh"}, {"max_displacement", 3}}}};
}

json gaussian_config(double eps, double lambda, int L) {
  return {{"model", {{"type", "gaussian"}, {"epsilon", eps}, {"b", {{"1", 1}, {"-1", 1}}},
                     {"lambda", lambda}}},
          {"lattice", {{"dim", 1}, {"L", L}, {"bc", "torus"}}}};
}

TEST_F(CliTest, CheckExitCodes) {
  EXPECT_EQ(cmd_check(options(write_config("a.json", model1_config(0.02)))), kExitPass);
  EXPECT_NE(console_.str().find("gamma_d"), std::string::npos);
  EXPECT_EQ(cmd_check(options(write_config("b.json", model1_config(1.0)))),
            kExitOutsideUniqueness);
  json odd = model1_config(0.02);
  odd["model"] = {{"type", "custom"}, {"F", {0, 0, 1, 1}}, {"pairs", {{"1", {0, 0, 1}}}},
                  {"lambda", 0.01}};
  EXPECT_EQ(cmd_check(options(write_config("c.json", odd))), kExitFailure);
}

TEST_F(CliTest, CheckWritesReport) {
  CommandOptions o = options(write_config("a.json", model1_config(0.02)));
  o.out = root_ / "rep";
  ASSERT_EQ(cmd_check(o), kExitPass);
  const json r = json::parse(slurp(o.out / "report.json"));
  EXPECT_EQ(r.at("tool_version"), kToolVersion);
  EXPECT_EQ(r.at("command"), "check");
  EXPECT_EQ(r.at("config_digest").get<std::string>().size(), 16u);
}

TEST_F(CliTest, ConfigErrors) {
  const fs::path bad = root_ / "bad.json";
  std::ofstream(bad) << "{\"model\": ";
  EXPECT_EQ(cmd_check(options(bad)), kExitConfig);
  json unknown = model1_config(0.02);
  unknown["lattice"]["shape"] = "square";
  EXPECT_EQ(cmd_check(options(write_config("u.json", unknown))), kExitConfig);
  EXPECT_EQ(cmd_check(options(root_ / "missing.json")), kExitConfig);
  json noseed = model1_config(0.02);
  noseed["sampler"].erase("seed");
  CommandOptions o = options(write_config("s.json", noseed));
  o.out = root_ / "run";
  EXPECT_EQ(cmd_sample(o), kExitConfig);
}

TEST_F(CliTest, SampleRowCountAndArtifacts) {
  CommandOptions o = options(write_config("a.json", model1_config(0.02)));
  o.out = root_ / "run";
  ASSERT_EQ(cmd_sample(o), kExitPass) << errors_.str();
  EXPECT_EQ(data_rows(o.out / "samples.csv"), 450u);  // (1000 - 100) / 2
  for (const char* f : {"checkpoint.bin", "config.json", "meta.json"}) {
    EXPECT_TRUE(fs::exists(o.out / f)) << f;
  }
  const json meta = json::parse(slurp(o.out / "meta.json"));
  EXPECT_EQ(meta.at("sweeps"), 1000);
}

TEST_F(CliTest, SampleIsDeterministic) {
  const fs::path cfg = write_config("a.json", model1_config(0.02, 400));
  CommandOptions a = options(cfg), b = options(cfg);
  a.out = root_ / "r1";
  b.out = root_ / "r2";
  ASSERT_EQ(cmd_sample(a), kExitPass);
  ASSERT_EQ(cmd_sample(b), kExitPass);
  EXPECT_EQ(slurp(a.out / "samples.csv"), slurp(b.out / "samples.csv"));
}

TEST_F(CliTest, ResumeMatchesUninterruptedRun) {
  CommandOptions full = options(write_config("full.json", model1_config(0.02, 800)));
  full.out = root_ / "full";
  ASSERT_EQ(cmd_sample(full), kExitPass);
  CommandOptions part = options(write_config("part.json", model1_config(0.02, 300)));
  part.out = root_ / "part";
  ASSERT_EQ(cmd_sample(part), kExitPass);
  CommandOptions resume = options({});
  resume.out = part.out;
  resume.resume = true;
  resume.sweeps = 800;
  ASSERT_EQ(cmd_sample(resume), kExitPass) << errors_.str();
  EXPECT_EQ(slurp(full.out / "samples.csv"), slurp(part.out / "samples.csv"));
}

TEST_F(CliTest, RefusesNonEmptyOutputWithoutForce) {
  CommandOptions o = options(write_config("a.json", model1_config(0.02, 200)));
  o.out = root_ / "run";
  ASSERT_EQ(cmd_sample(o), kExitPass);
  std::ofstream(o.out / "notes.txt") << "keep";
  EXPECT_EQ(cmd_sample(o), kExitConfig);
  o.force = true;
  EXPECT_EQ(cmd_sample(o), kExitPass);
  EXPECT_TRUE(fs::exists(o.out / "notes.txt"));
}

TEST_F(CliTest, AnalyzeWithoutCouplingPasses) {
  CommandOptions o = options(write_config("a.json", model1_config(0.0, 3000)));
  o.out = root_ / "run";
  ASSERT_EQ(cmd_sample(o), kExitPass);
  CommandOptions a = options({});
  a.run_dir = o.out;
  EXPECT_EQ(cmd_analyze(a), kExitPass) << errors_.str();
  EXPECT_TRUE(fs::exists(o.out / "cov.csv"));
  const json r = json::parse(slurp(o.out / "report.json"));
  EXPECT_TRUE(r.at("analysis").contains("bounds"));
}

TEST_F(CliTest, AnalyzeReportsUnboundedObservableInformationally) {
  json g = gaussian_config(1.0, 0.1, 8);
  g["sampler"] = {{"sweeps", 2000}, {"burnin", 200}, {"seed", 9}};
  g["analysis"] = {{"observable", "x"}, {"max_displacement", 2}};
  CommandOptions o = options(write_config("g.json", g));
  o.out = root_ / "run";
  ASSERT_EQ(cmd_sample(o), kExitPass);
  CommandOptions a = options({});
  a.run_dir = o.out;
  cmd_analyze(a);
  const json r = json::parse(slurp(o.out / "report.json")).at("analysis");
  EXPECT_TRUE(r.contains("decay_bound_informational"));
  for (const json& b : r.at("bounds")) EXPECT_NE(b.at("name"), "decay bound");
}

TEST_F(CliTest, AnalyzeCorruptSamples) {
  CommandOptions o = options(write_config("a.json", model1_config(0.02, 400)));
  o.out = root_ / "run";
  ASSERT_EQ(cmd_sample(o), kExitPass);
  std::ofstream(o.out / "samples.csv", std::ios::app) << "999,abc\n";
  CommandOptions a = options({});
  a.run_dir = o.out;
  EXPECT_EQ(cmd_analyze(a), kExitData);
  a.run_dir = root_ / "nowhere";
  EXPECT_NE(cmd_analyze(a), kExitPass);
}

TEST_F(CliTest, VerifyBattery) {
  CommandOptions o = options(write_config("a.json", model1_config(0.02)));
  o.out = root_ / "v";
  EXPECT_EQ(cmd_verify(o), kExitPass) << errors_.str();
  const json v = json::parse(slurp(o.out / "verify.json"));
  ASSERT_TRUE(v.is_array());
  EXPECT_GE(v.size(), 10u);

  CommandOptions g = options(write_config("g.json", gaussian_config(1.0, 0.1, 8)));
  g.out = root_ / "vg";
  EXPECT_EQ(cmd_verify(g), kExitPass) << errors_.str();
  bool saw_equality = false;
  for (const json& e : json::parse(slurp(g.out / "verify.json"))) {
    if (e.value("equality", false)) saw_equality = true;
  }
  EXPECT_TRUE(saw_equality);
}

TEST_F(CliTest, OracleCsv) {
  CommandOptions o = options(write_config("g.json", gaussian_config(2.0, 0.0, 6)));
  o.out = root_ / "oracle.csv";
  ASSERT_EQ(cmd_oracle(o), kExitPass) << errors_.str();
  const auto rows = read_oracle_csv(o.out);
  EXPECT_EQ(rows.size(), 9u);  // |k| <= 4 by default
  EXPECT_NEAR(rows.at(Displacement{{0}}), 0.5, 1e-14);
  EXPECT_NEAR(rows.at(Displacement{{1}}), 0.0, 1e-14);

  json two = gaussian_config(1.0, 0.1, 2);
  two["lattice"]["bc"] = "free";
  CommandOptions t = options(write_config("two.json", two));
  t.out = root_ / "two.csv";
  ASSERT_EQ(cmd_oracle(t), kExitPass) << errors_.str();
  const auto pair = read_oracle_csv(t.out);
  // Precision matrix [[1.2, -0.2], [-0.2, 1.2]].
  EXPECT_NEAR(pair.at(Displacement{{0}}), 1.2 / 1.4, 1e-12);
  EXPECT_NEAR(pair.at(Displacement{{1}}), 0.2 / 1.4, 1e-12);

  EXPECT_EQ(cmd_oracle(options(write_config("m.json", model1_config(0.02)))), kExitConfig);
}

}  // namespace
}  // namespace polygibbs
