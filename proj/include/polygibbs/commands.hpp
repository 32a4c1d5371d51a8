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

#ifndef POLYGIBBS_COMMANDS_HPP_
#define POLYGIBBS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "polygibbs/analysis.hpp"

namespace polygibbs {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,
  kExitOutsideUniqueness = 2,
  kExitConfig = 64,
  kExitData = 65,
};

struct CommandOptions {
  std::filesystem::path config;
  // check/verify: report directory; sample: run directory; oracle: CSV file.
  // Empty prints to the console where that makes sense.
  std::filesystem::path out;
  std::filesystem::path run_dir;  // analyze
  std::filesystem::path against_oracle;
  bool force = false;
  bool resume = false;
  std::optional<std::uint64_t> sweeps;  // resume target override
  std::optional<int> max_displacement;
  std::optional<double> alpha;
  std::ostream* console = &std::cout;
  std::ostream* errors = &std::cerr;
};

int cmd_check(const CommandOptions& options);
int cmd_sample(const CommandOptions& options);
int cmd_analyze(const CommandOptions& options);
int cmd_verify(const CommandOptions& options);
int cmd_oracle(const CommandOptions& options);

// Non-finite numbers become null.
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const DobrushinReport& report);

// Coordinate columns x[0..sites-1] of a samples.csv file. Throws DataError
// on a missing, malformed or non-finite table.
SampleTable read_samples_csv(const std::filesystem::path& path, std::size_t sites);

// displacement,cov rows as written by cmd_oracle.
std::map<Displacement, double> read_oracle_csv(const std::filesystem::path& path);

}  // namespace polygibbs

#endif  // POLYGIBBS_COMMANDS_HPP_
