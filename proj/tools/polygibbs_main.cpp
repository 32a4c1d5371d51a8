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

// polygibbs: uniqueness thresholds, exact heat-bath sampling and inequality
// checks for lattice spin systems with convex polynomial interactions.

#include <CLI11.hpp>

#include "polygibbs/commands.hpp"

int main(int argc, char** argv) {
  using polygibbs::CommandOptions;

  CLI::App app{"Lattice Gibbs measures with convex polynomial pair interactions"};
  app.set_version_flag("--version", polygibbs::kToolVersion);
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config, out, run_dir, oracle;
  int max_displacement = -1;
  double alpha = -1.0;
  std::uint64_t sweeps = 0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config, "configuration JSON");
    if (needs_config) c->required();
    sub->add_option("--max-displacement", max_displacement,
                    "largest |k|_1 for covariance tables");
    sub->add_option("--alpha", alpha, "semimetric rate override");
  };

  CLI::App* check = app.add_subcommand("check", "conditions and uniqueness threshold");
  common(check, true);
  check->add_option("--out", out, "directory for report.json");

  CLI::App* sample = app.add_subcommand("sample", "run the heat-bath chain");
  common(sample, false);
  sample->add_option("--out", out, "run directory")->required();
  sample->add_flag("--force", opts.force, "overwrite an existing run directory");
  sample->add_flag("--resume", opts.resume, "continue from checkpoint.bin");
  sample->add_option("--sweeps", sweeps, "total sweep target (overrides config)");

  CLI::App* analyze = app.add_subcommand("analyze", "covariances and bound checks");
  common(analyze, false);
  analyze->add_option("run_dir", run_dir, "run directory")->required();
  analyze->add_option("--against-oracle", oracle, "oracle covariance CSV");

  CLI::App* verify = app.add_subcommand("verify", "1-D inequality verifiers");
  common(verify, true);
  verify->add_option("--out", out, "directory for verify.json");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact Gaussian covariances");
  common(oracle_cmd, true);
  oracle_cmd->add_option("--out", out, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : polygibbs::kExitConfig;
  }

  opts.config = config;
  opts.out = out;
  opts.run_dir = run_dir;
  opts.against_oracle = oracle;
  if (max_displacement >= 0) opts.max_displacement = max_displacement;
  if (alpha >= 0.0) opts.alpha = alpha;
  if (sweeps > 0) opts.sweeps = sweeps;

  if (check->parsed()) return polygibbs::cmd_check(opts);
  if (sample->parsed()) return polygibbs::cmd_sample(opts);
  if (analyze->parsed()) return polygibbs::cmd_analyze(opts);
  if (verify->parsed()) return polygibbs::cmd_verify(opts);
  return polygibbs::cmd_oracle(opts);
}
