// Copyright 2026 The rqite Authors
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

/* C interface to librqite. All objects are opaque handles released with the
 * matching *_free function. Functions return RQITE_OK or an error status;
 * rqite_last_error() describes the most recent failure on the calling
 * thread. Strings returned through char** are owned by the caller and must be
 * released with rqite_string_free. */
#ifndef RQITE_RQITE_H_
#define RQITE_RQITE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RQITE_BUILDING_LIBRARY)
#define RQITE_API __attribute__((visibility("default")))
#else
#define RQITE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rqite_status {
  RQITE_OK = 0,
  RQITE_ERR_INVALID_ARGUMENT = 1,
  RQITE_ERR_PARSE = 2,
  RQITE_ERR_CAP_EXCEEDED = 3,
  RQITE_ERR_DOMAIN = 4,
  RQITE_ERR_NOT_APPLICABLE = 5,
  RQITE_ERR_DEGENERATE_OVERLAP = 6,
  RQITE_ERR_SCAN_EXHAUSTED = 7,
  RQITE_ERR_IO = 8,
  RQITE_ERR_INTERNAL = 9
} rqite_status;

typedef enum rqite_normalize_mode { RQITE_NORMALIZE_EXACT = 0, RQITE_NORMALIZE_BOUND = 1 } rqite_normalize_mode;

typedef struct rqite_hamiltonian rqite_hamiltonian;
typedef struct rqite_state rqite_state;
typedef struct rqite_circuit rqite_circuit;

typedef void (*rqite_warning_fn)(const char* message, void* user_data);

RQITE_API const char* rqite_version(void);
/* Stable lowercase identifier such as "cap_exceeded". */
RQITE_API const char* rqite_status_string(rqite_status status);
RQITE_API const char* rqite_last_error(void);
RQITE_API void rqite_string_free(char* s);

/* Replaces the stderr warning printer; pass NULL to restore it. */
RQITE_API void rqite_set_warning_callback(rqite_warning_fn fn, void* user_data);
RQITE_API rqite_status rqite_set_limit(const char* key, const char* value);
RQITE_API rqite_status rqite_apply_config(const char* text);
RQITE_API rqite_status rqite_set_workers(int workers);

/* scale (optional) receives the factor the coefficients were divided by. */
RQITE_API rqite_status rqite_hamiltonian_parse(const char* text, int normalize_coeffs, rqite_hamiltonian** out,
                                               double* scale);
RQITE_API void rqite_hamiltonian_free(rqite_hamiltonian* h);
RQITE_API rqite_status rqite_hamiltonian_serialize(const rqite_hamiltonian* h, char** out);
RQITE_API rqite_status rqite_hamiltonian_info(const rqite_hamiltonian* h, size_t* n_qubits, size_t* n_terms,
                                              size_t* locality);
RQITE_API rqite_status rqite_hamiltonian_normalize(const rqite_hamiltonian* h, rqite_normalize_mode mode,
                                                   rqite_hamiltonian** out, double* scale);
RQITE_API rqite_status rqite_hamiltonian_conjugate(const rqite_hamiltonian* h, const rqite_circuit* u,
                                                   rqite_hamiltonian** out);
/* Maximum interaction-graph degree and the resulting beta*. */
RQITE_API rqite_status rqite_beta_star(const rqite_hamiltonian* h, size_t* max_degree, double* beta_star);

RQITE_API rqite_status rqite_state_from_json(const char* text, rqite_state** out);
RQITE_API void rqite_state_free(rqite_state* s);
RQITE_API rqite_status rqite_circuit_from_json(const char* text, rqite_circuit** out);
RQITE_API void rqite_circuit_free(rqite_circuit* c);

RQITE_API rqite_status rqite_exact_partition(const rqite_hamiltonian* h, const rqite_state* psi, double shift,
                                             double beta_re, double beta_im, double* value_re, double* value_im);
RQITE_API rqite_status rqite_estimate_partition(const rqite_hamiltonian* h, const rqite_state* psi, double shift,
                                                double beta_re, double beta_im, double eps, double* value_re,
                                                double* value_im, double* error_bound, size_t* order);

/* Runs a named command (oracle, partition, estimate, clusters, mc, continue,
 * bench, selftest) with a JSON options object. On success *out_json holds
 * {"config": ..., "result": ...}. Any of h, psi, u may be NULL when the
 * command does not use it. */
RQITE_API rqite_status rqite_run_command(const char* command, const char* options_json, const rqite_hamiltonian* h,
                                         const rqite_state* psi, const rqite_circuit* u, char** out_json);

#ifdef __cplusplus
}
#endif

#endif  // RQITE_RQITE_H_
