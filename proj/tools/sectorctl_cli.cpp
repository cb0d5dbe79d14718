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

// Command-line front end over the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sectorctl/sectorctl.h"

using nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 7;
  std::size_t trials = 0;
  double tol = 1e-9;
  std::string json_path;
  std::vector<std::size_t> dims;
  bool timing = false;
  std::size_t mutations = 20;
  std::string oracle = "two-ctrl";
  std::vector<std::string> supermaps;
  std::vector<std::size_t> aux_dims;
  std::string file;
  std::string bind;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

int report_error(sc_status s) {
  std::fprintf(stderr, "error (%s): %s\n", sc_status_name(s), sc_last_error());
  return 2;
}

std::string fmt_distance(const json& v) {
  if (v.is_null()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v.get<double>());
  return buf;
}

int run(const std::string& suite, const Options& o) {
  json cfg = {{"suite", suite},   {"seed", o.seed},         {"trials", o.trials},
              {"tol", o.tol},     {"dims", o.dims},         {"timing", o.timing},
              {"file", o.file},   {"mutations", o.mutations}, {"oracle", o.oracle},
              {"supermaps", o.supermaps}, {"aux_dims", o.aux_dims}, {"json", o.json_path}};
  char* out = nullptr;
  int passed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const sc_status s = sc_run_suite(cfg.dump().c_str(), &out, &passed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s != SC_OK) return report_error(s);
  const json report = json::parse(take(out));
  for (const auto& c : report["cases"]) {
    const bool gap = c.contains("min_gap");
    std::printf("%s  %s  trials=%zu %s=%s\n", c["passed"].get<bool>() ? "PASS" : "FAIL",
                c["name"].get<std::string>().c_str(), c["trials"].get<std::size_t>(),
                gap ? "min_gap" : "max", fmt_distance(gap ? c["min_gap"] : c["max_distance"]).c_str());
    if (c.contains("first_failure"))
      std::printf("      first failure: %s\n", c["first_failure"].get<std::string>().c_str());
  }
  std::printf("%s: %s (%zu failing case(s), %.2f s)\n", suite.c_str(),
              passed ? "PASS" : "FAIL", report["failures"].get<std::size_t>(), secs);
  return passed ? 0 : 1;
}

int eval_bound(const Options& o) {
  std::ifstream in(o.bind);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", o.bind.c_str());
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  sc_circuit* c = nullptr;
  sc_status s = sc_circuit_parse_file(o.file.c_str(), &c);
  if (s != SC_OK) return report_error(s);
  sc_channel* ch = nullptr;
  s = sc_circuit_eval(c, ss.str().c_str(), o.tol, &ch);
  sc_circuit_free(c);
  if (s != SC_OK) return report_error(s);
  char* text = nullptr;
  s = sc_channel_to_json(ch, &text);
  sc_channel_free(ch);
  if (s != SC_OK) return report_error(s);
  const std::string out = take(text);
  if (o.json_path.empty()) {
    std::printf("%s\n", out.c_str());
  } else {
    std::ofstream f(o.json_path);
    f << out << "\n";
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", o.json_path.c_str());
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sectorctl: controlled quantum channels, routed circuits and their test suites"};
  app.set_version_flag("--version", std::string(sc_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
  app.add_option("--trials", o.trials, "trials (0: suite default)")->capture_default_str();
  app.add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--json", o.json_path, "write the JSON report here");
  app.add_option("--dims", o.dims, "target dimensions, e.g. 2,3,4")->delimiter(',');
  app.add_flag("--timing", o.timing, "include runtime in the JSON report");

  const std::vector<std::pair<std::string, std::string>> plain = {
      {"ctrl-equiv", "CTRL of a pinned channel equals the direct pinned control"},
      {"ctrl-unitary", "CTRL keeps unitaries pure"},
      {"roundtrip", "CTRL and its inverse undo each other"},
      {"lemma2", "pins determine controlled channels"},
      {"thm2-twocontrol", "two-channel control depends exactly on the Kraus prefix"},
      {"two-ctrl-isometry", "2-CTRL of isometries is the controlled pair"},
      {"depol-obstruction", "coherence-block rank witnesses"},
      {"composite", "composite control build/extract and the CTRL_2 circuit"},
  };
  std::string chosen;
  for (const auto& [name, help] : plain) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, n = name] { chosen = n; });
  }
  auto* check = app.add_subcommand("routed-check", "type-check a routed circuit and mutations of it");
  check->add_option("file", o.file, "circuit (.rqc)")->required()->check(CLI::ExistingFile);
  check->add_option("--mutations", o.mutations, "number of mutations")->capture_default_str();
  check->callback([&] { chosen = "routed-check"; });

  auto* eval = app.add_subcommand("routed-eval", "evaluate a routed circuit");
  eval->add_option("file", o.file, "circuit (.rqc)")->required()->check(CLI::ExistingFile);
  eval->add_option("--oracle", o.oracle, "two-ctrl | none")->capture_default_str();
  eval->add_option("--bind", o.bind, "bindings JSON; prints the evaluated channel")
      ->check(CLI::ExistingFile);
  eval->callback([&] { chosen = "routed-eval"; });

  auto* verify = app.add_subcommand("verify-supermap", "sample the supermap admissibility checks");
  verify->add_option("--supermap", o.supermaps, "ctrl, two-ctrl, ctrl2, ctrl-broken")
      ->delimiter(',');
  verify->add_option("--aux-dims", o.aux_dims, "auxiliary dimensions")->delimiter(',');
  verify->callback([&] { chosen = "verify-supermap"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (chosen == "routed-eval" && !o.bind.empty()) return eval_bound(o);
  return run(chosen, o);
}
