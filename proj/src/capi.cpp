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

#include "sectorctl/sectorctl.h"

#include <cstring>
#include <map>
#include <string>

#include "sectorctl/error.hpp"
#include "sectorctl/json_io.hpp"
#include "sectorctl/routedfmt.hpp"
#include "sectorctl/suites.hpp"
#include "sectorctl/supermaps.hpp"

#ifndef SECTORCTL_VERSION
#define SECTORCTL_VERSION "0.0.0"
#endif

struct sc_matrix {
  sectorctl::ComplexMatrix m;
};
struct sc_channel {
  sectorctl::KrausChannel c;
};
struct sc_circuit {
  sectorctl::CircuitAST ast;
};

namespace {

using namespace sectorctl;

thread_local std::string g_last_error;

sc_status fail(sc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sc_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return SC_OK;
  } catch (const Error& e) {
    return fail(static_cast<sc_status>(e.code()), e.what());
  } catch (const Json::exception& e) {
    return fail(SC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SC_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sc_channel* wrap(KrausChannel c) { return new sc_channel{std::move(c)}; }

RoutedKrausChannel as_sp(const KrausChannel& c) {
  if (c.dim_in() < 2 || c.dim_out() < 2)
    throw Error(ErrorCode::kDimensionMismatch, "sector-preserving input must act on 1 (+) d");
  const PartitionedSpace si({1, c.dim_in() - 1}), so({1, c.dim_out() - 1});
  return RoutedKrausChannel(si, so, Route::identity(2), c);
}

}  // namespace

extern "C" {

const char* sc_version(void) { return SECTORCTL_VERSION; }

const char* sc_status_name(sc_status s) {
  if (s == SC_OK) return "ok";
  if (s == SC_ERR_INTERNAL) return "internal";
  if (s >= SC_ERR_INVALID_ARGUMENT && s <= SC_ERR_UNKNOWN_SUITE)
    return error_code_name(static_cast<ErrorCode>(s));
  return "unknown";
}

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

sc_status sc_matrix_from_json(const char* json, sc_matrix** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new sc_matrix{matrix_from_json(parse_json(json))};
  });
}

sc_status sc_matrix_to_json(const sc_matrix* m, char** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = dup_string(matrix_to_json(m->m).dump());
  });
}

sc_status sc_matrix_dims(const sc_matrix* m, size_t* rows, size_t* cols) {
  return guard([&] {
    need(m, "matrix");
    if (rows) *rows = m->m.rows();
    if (cols) *cols = m->m.cols();
  });
}

void sc_matrix_free(sc_matrix* m) { delete m; }

sc_status sc_channel_from_json(const char* json, double tol, sc_channel** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = wrap(channel_from_json(parse_json(json), tol));
  });
}

sc_status sc_channel_to_json(const sc_channel* c, char** out) {
  return guard([&] {
    need(c, "channel");
    need(out, "out");
    *out = dup_string(channel_to_json(c->c).dump());
  });
}

sc_status sc_channel_dims(const sc_channel* c, size_t* dim_in, size_t* dim_out) {
  return guard([&] {
    need(c, "channel");
    if (dim_in) *dim_in = c->c.dim_in();
    if (dim_out) *dim_out = c->c.dim_out();
  });
}

sc_status sc_channel_random(size_t dim_in, size_t dim_out, size_t kraus_rank, uint64_t seed,
                            sc_channel** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(random_cptp(dim_in, dim_out, kraus_rank, seed));
  });
}

sc_status sc_channel_choi(const sc_channel* c, sc_matrix** out) {
  return guard([&] {
    need(c, "channel");
    need(out, "out");
    *out = new sc_matrix{choi(c->c)};
  });
}

sc_status sc_channels_equal(const sc_channel* a, const sc_channel* b, double tol, int* equal,
                            double* distance) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    const double d = choi_distance(a->c, b->c);
    if (equal) *equal = d <= tol;
    if (distance) *distance = d;
  });
}

void sc_channel_free(sc_channel* c) { delete c; }

sc_status sc_ctrl_apply(const sc_channel* sp, sc_channel** out) {
  return guard([&] {
    need(sp, "channel");
    need(out, "out");
    *out = wrap(ctrl_apply(SectorPreserving1d(as_sp(sp->c))).channel());
  });
}

sc_status sc_ctrl_inverse_apply(const sc_channel* controlled, size_t d, sc_channel** out) {
  return guard([&] {
    need(controlled, "channel");
    need(out, "out");
    const ControlledChannel cc(2, d, d, controlled->c);
    *out = wrap(ctrl_inverse_apply(cc).channel());
  });
}

sc_status sc_two_ctrl_apply(const sc_channel* a, const sc_channel* b, sc_channel** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = wrap(two_ctrl_apply(as_sp(a->c), as_sp(b->c)).channel());
  });
}

sc_status sc_circuit_parse(const char* text, const char* base_dir, sc_circuit** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new sc_circuit{parse_circuit(text, base_dir ? base_dir : ".")};
  });
}

sc_status sc_circuit_parse_file(const char* path, sc_circuit** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new sc_circuit{parse_circuit_file(path)};
  });
}

sc_status sc_circuit_print(const sc_circuit* c, char** out) {
  return guard([&] {
    need(c, "circuit");
    need(out, "out");
    *out = dup_string(print_circuit(c->ast));
  });
}

sc_status sc_circuit_check(const sc_circuit* c, double tol, char** report_json, int* ok) {
  return guard([&] {
    need(c, "circuit");
    const RouteCheckReport r = check_circuit(c->ast, tol);
    if (ok) *ok = r.ok;
    if (report_json) *report_json = dup_string(check_report_to_json(r).dump());
  });
}

sc_status sc_circuit_eval(const sc_circuit* c, const char* bindings_json, double tol,
                          sc_channel** out) {
  return guard([&] {
    need(c, "circuit");
    need(bindings_json, "bindings");
    need(out, "out");
    const Json j = parse_json(bindings_json);
    if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "bindings must be an object");
    std::map<std::string, RoutedKrausChannel> b;
    for (auto it = j.begin(); it != j.end(); ++it) b.emplace(it.key(), routed_from_json(it.value(), tol));
    *out = wrap(eval_circuit(c->ast, b, tol));
  });
}

void sc_circuit_free(sc_circuit* c) { delete c; }

sc_status sc_suite_names(char** json_array) {
  return guard([&] {
    need(json_array, "out");
    *json_array = dup_string(Json(suite_names()).dump());
  });
}

sc_status sc_run_suite(const char* config_json, char** report_json, int* all_passed) {
  return guard([&] {
    need(config_json, "config");
    const Json report = run_suite(suite_config_from_json(parse_json(config_json)));
    if (all_passed) *all_passed = report.at("passed").get<bool>();
    if (report_json) *report_json = dup_string(report.dump());
  });
}

sc_status sc_prng_gaussians(uint64_t seed, uint64_t stream_id, size_t n, double* out) {
  return guard([&] {
    if (n) need(out, "out");
    Prng rng(seed, stream_id);
    for (size_t i = 0; i < n; ++i) out[i] = rng.gaussian();
  });
}

}  // extern "C"
