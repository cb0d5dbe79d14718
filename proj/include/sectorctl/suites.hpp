// Copyright 2026 The sectorctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sectorctl/json_io.hpp"

namespace sectorctl {

// Zero / empty fields mean "suite default".
struct SuiteConfig {
  std::string suite;
  std::vector<std::size_t> dims;
  std::size_t trials = 0;
  std::uint64_t seed = 7;
  double tol = kEqTol;
  std::string file;                    // routed-check, routed-eval
  std::size_t mutations = 20;          // routed-check
  std::string oracle = "two-ctrl";     // routed-eval: two-ctrl | none
  std::vector<std::string> supermaps;  // verify-supermap
  std::vector<std::size_t> aux_dims;   // verify-supermap
  bool timing = false;                 // adds runtime_seconds to the report
  std::string json_path;               // report written here when set
};

const std::vector<std::string>& suite_names();

Json suite_config_to_json(const SuiteConfig& c);
SuiteConfig suite_config_from_json(const Json& j);

// Report: {suite, version, config, passed, failures, cases: [{name, passed,
// trials, max_distance, ...}]}. Throws kUnknownSuite, kInvalidArgument, kIo.
Json run_suite(const SuiteConfig& config);

}  // namespace sectorctl
