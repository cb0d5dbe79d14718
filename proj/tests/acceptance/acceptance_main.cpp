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


// Runs the ten acceptance criteria at pinned settings. One line per
// criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "sectorctl/suites.hpp"

namespace {

using sectorctl::Json;
using sectorctl::SuiteConfig;

const std::string kTwoCtrlFixture = std::string(SECTORCTL_FIXTURE_DIR) + "/fig6_two_ctrl.rqc";
constexpr double kTol = 1e-9;
constexpr double kAc1Seconds = 30.0;

SuiteConfig pinned(const std::string& suite, std::vector<std::size_t> dims, std::size_t trials) {
  SuiteConfig c;
  c.suite = suite;
  c.dims = std::move(dims);
  c.trials = trials;
  c.seed = 7;
  c.tol = kTol;
  c.file = kTwoCtrlFixture;
  return c;
}

struct Outcome {
  bool passed = true;
  std::size_t cases = 0;
  std::size_t trials = 0;
  double max_distance = 0.0;
  double seconds = 0.0;
  std::string note;
};

void run_into(Outcome& o, const SuiteConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Json r = sectorctl::run_suite(c);
    o.passed = o.passed && r.at("passed").get<bool>();
    for (const auto& k : r.at("cases")) {
      ++o.cases;
      o.trials += k.at("trials").get<std::size_t>();
      if (!k.at("max_distance").is_null())
        o.max_distance = std::max(o.max_distance, k.at("max_distance").get<double>());
      if (!k.at("passed").get<bool>())
        o.note += (o.note.empty() ? "" : "; ") + c.suite + ": " + k.at("name").get<std::string>();
    }
  } catch (const std::exception& e) {
    o.passed = false;
    o.note += (o.note.empty() ? "" : "; ") + std::string(e.what());
  }
  o.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    std::vector<SuiteConfig> configs;
    double max_seconds;
  };
  SuiteConfig verify = pinned("verify-supermap", {2, 3}, 50);
  verify.aux_dims = {1, 2, 3};
  SuiteConfig check = pinned("routed-check", {}, 0);
  check.mutations = 20;
  const std::vector<Criterion> criteria = {
      {"AC1", "ctrl equivalence", {pinned("ctrl-equiv", {2, 3, 4}, 200)}, kAc1Seconds},
      {"AC2", "unitary preservation", {pinned("ctrl-unitary", {2, 3, 4}, 100)}, 0},
      {"AC3", "ctrl round trips", {pinned("roundtrip", {2, 3, 4}, 200)}, 0},
      {"AC4", "pins and canonical form", {pinned("lemma2", {2, 3, 4}, 300)}, 0},
      {"AC5", "two-control equality", {pinned("thm2-twocontrol", {2, 3}, 100)}, 0},
      {"AC6", "2-CTRL on isometries", {pinned("two-ctrl-isometry", {}, 100)}, 0},
      {"AC7", "coherence obstruction", {pinned("depol-obstruction", {2, 3}, 100)}, 0},
      {"AC8", "composite control", {pinned("composite", {2, 3}, 100)}, 0},
      {"AC9", "routed circuits", {pinned("routed-eval", {}, 100), check}, 0},
      {"AC10", "supermap verifier", {verify}, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    for (const auto& cfg : c.configs) run_into(o, cfg);
    if (c.max_seconds > 0 && o.seconds > c.max_seconds) {
      o.passed = false;
      o.note += (o.note.empty() ? "" : "; ") + std::string("runtime over limit");
    }
    if (!o.passed) ++failed;
    std::printf("%s %s %s cases=%zu trials=%zu max_distance=%.3e time=%.2fs%s%s\n", c.id,
                o.passed ? "PASS" : "FAIL", c.what, o.cases, o.trials, o.max_distance, o.seconds,
                o.note.empty() ? "" : " : ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
