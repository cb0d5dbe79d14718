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

#ifndef SECTORCTL_H_
#define SECTORCTL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SECTORCTL_BUILDING_LIBRARY)
#define SC_API __declspec(dllexport)
#else
#define SC_API __declspec(dllimport)
#endif
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* JSON that fails to parse or has the wrong shape gives
   SC_ERR_INVALID_ARGUMENT. SC_ERR_MALFORMED is for well-formed inputs that
   are not of the required structure (e.g. not a controlled channel). */
typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1,
  SC_ERR_DIMENSION_MISMATCH = 2,
  SC_ERR_NOT_HERMITIAN = 3,
  SC_ERR_RANK_DEFICIENT = 4,
  SC_ERR_NOT_TRACE_PRESERVING = 5,
  SC_ERR_NOT_NORMALIZED = 6,
  SC_ERR_INVALID_PIN = 7,
  SC_ERR_ROUTE_VIOLATION = 8,
  SC_ERR_MALFORMED = 9,
  SC_ERR_PARSE = 10,
  SC_ERR_IO = 11,
  SC_ERR_UNKNOWN_SUITE = 12,
  SC_ERR_INTERNAL = 99
} sc_status;

typedef struct sc_matrix sc_matrix;
typedef struct sc_channel sc_channel;
typedef struct sc_circuit sc_circuit;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status s);
/* Message of the last failed call on this thread; "" if none. Parse errors
   start with "line:column: ". */
SC_API const char* sc_last_error(void);
/* Frees strings returned through char** out-parameters. */
SC_API void sc_string_free(char* s);

/* Matrices: JSON {"rows", "cols", "data": [[re, im], ...]} row-major. */
SC_API sc_status sc_matrix_from_json(const char* json, sc_matrix** out);
SC_API sc_status sc_matrix_to_json(const sc_matrix* m, char** out);
SC_API sc_status sc_matrix_dims(const sc_matrix* m, size_t* rows, size_t* cols);
SC_API void sc_matrix_free(sc_matrix* m);

/* Channels: JSON {"dim_in", "dim_out", "kraus": [matrix, ...]}; must be
   trace preserving within tol. */
SC_API sc_status sc_channel_from_json(const char* json, double tol, sc_channel** out);
SC_API sc_status sc_channel_to_json(const sc_channel* c, char** out);
SC_API sc_status sc_channel_dims(const sc_channel* c, size_t* dim_in, size_t* dim_out);
SC_API sc_status sc_channel_random(size_t dim_in, size_t dim_out, size_t kraus_rank,
                                   uint64_t seed, sc_channel** out);
SC_API sc_status sc_channel_choi(const sc_channel* c, sc_matrix** out);
/* Frobenius distance of the Choi matrices; *equal = distance <= tol. */
SC_API sc_status sc_channels_equal(const sc_channel* a, const sc_channel* b, double tol,
                                   int* equal, double* distance);
SC_API void sc_channel_free(sc_channel* c);

/* Supermaps. Inputs act on 1 (+) d with the vacuum at index 0 and must
   preserve the two sectors. Controlled outputs act on C (x) T with the
   control qubit most significant. */
SC_API sc_status sc_ctrl_apply(const sc_channel* sector_preserving, sc_channel** out);
SC_API sc_status sc_ctrl_inverse_apply(const sc_channel* controlled, size_t d,
                                       sc_channel** out);
SC_API sc_status sc_two_ctrl_apply(const sc_channel* a, const sc_channel* b,
                                   sc_channel** out);

/* Routed circuits in the .rqc text format. */
SC_API sc_status sc_circuit_parse(const char* text, const char* base_dir, sc_circuit** out);
SC_API sc_status sc_circuit_parse_file(const char* path, sc_circuit** out);
SC_API sc_status sc_circuit_print(const sc_circuit* c, char** out);
SC_API sc_status sc_circuit_check(const sc_circuit* c, double tol, char** report_json,
                                  int* ok);
/* bindings: {"slot": {"dim_in", "dim_out", "kraus", "sectors_in",
   "sectors_out", "route"}, ...} */
SC_API sc_status sc_circuit_eval(const sc_circuit* c, const char* bindings_json, double tol,
                                 sc_channel** out);
SC_API void sc_circuit_free(sc_circuit* c);

/* Suites. config_json: {"suite", "dims", "trials", "seed", "tol", "file",
   "mutations", "oracle", "supermaps", "aux_dims", "timing", "json"}. */
SC_API sc_status sc_suite_names(char** json_array);
SC_API sc_status sc_run_suite(const char* config_json, char** report_json, int* all_passed);

/* First n standard Gaussians of stream (seed, stream_id). */
SC_API sc_status sc_prng_gaussians(uint64_t seed, uint64_t stream_id, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif  // SECTORCTL_H_
