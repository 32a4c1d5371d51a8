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

#ifndef POLYGIBBS_CONFIG_HPP_
#define POLYGIBBS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "polygibbs/lattice.hpp"
#include "polygibbs/potentials.hpp"
#include "polygibbs/sampler.hpp"

namespace polygibbs {

struct LatticeConfig {
  int dim = 1;
  std::vector<int> extents;
  Boundary boundary = Boundary::kTorus;
  double boundary_value = 0.0;  // fixed boundary only
};

struct SamplerConfig {
  std::uint64_t sweeps = 0;
  std::uint64_t burnin = 0;  // defaults to sweeps / 10
  std::uint64_t thin = 1;
  std::uint64_t seed = 0;
  SweepOrder order = SweepOrder::kSequential;
  std::vector<std::string> observables;  // beyond the coordinate
  std::uint64_t snapshot_every = 0;
  double initial_value = 0.0;
};

struct AnalysisConfig {
  std::string observable = "tanh";
  int max_displacement = 4;
  double a = -1.0;  // negative: epsilon / 4
  std::size_t batches = 32;
};

// Parsed configuration document. Model sections:
//   {"type": "model1", "n": 1, "b": {"1": 1, "-1": 1}, "lambda": 0.02}
//   {"type": "gaussian", "epsilon": 1, "b": {...}, "lambda": 0.1}
//   {"type": "custom", "F": [c0, c1, ...], "pairs": {"1": [...]}, "lambda": 0}
// Displacement keys are comma-separated integers.
struct RunConfig {
  nlohmann::json source;
  ModelSpec model;
  LatticeConfig lattice;
  Semimetric metric;
  bool has_sampler = false;
  SamplerConfig sampler;
  AnalysisConfig analysis;
};

// Throws ConfigError on any schema or value problem.
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::filesystem::path& path);

LatticeSpec make_lattice(const RunConfig& config);

// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string config_digest(const nlohmann::json& document);

}  // namespace polygibbs

#endif  // POLYGIBBS_CONFIG_HPP_
