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

#include "rqite/rqite.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "rqite/commands.hpp"
#include "rqite/error.hpp"
#include "rqite/exact_oracle.hpp"
#include "rqite/expansion.hpp"
#include "rqite/hamiltonian.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"

struct rqite_hamiltonian {
  rqite::LocalHamiltonian value;
};
struct rqite_state {
  rqite::SemiClassicalState value;
};
struct rqite_circuit {
  rqite::ShallowCircuit value;
};

namespace {

thread_local std::string last_error;

rqite_status to_status(rqite::ErrorCode c) {
  using rqite::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return RQITE_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return RQITE_ERR_PARSE;
    case ErrorCode::CapExceeded: return RQITE_ERR_CAP_EXCEEDED;
    case ErrorCode::Domain: return RQITE_ERR_DOMAIN;
    case ErrorCode::NotApplicable: return RQITE_ERR_NOT_APPLICABLE;
    case ErrorCode::DegenerateOverlap: return RQITE_ERR_DEGENERATE_OVERLAP;
    case ErrorCode::ScanExhausted: return RQITE_ERR_SCAN_EXHAUSTED;
    case ErrorCode::Io: return RQITE_ERR_IO;
    case ErrorCode::Internal: return RQITE_ERR_INTERNAL;
  }
  return RQITE_ERR_INTERNAL;
}

template <typename F>
rqite_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return RQITE_OK;
  } catch (const rqite::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RQITE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RQITE_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) rqite::fail(rqite::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rqite_version(void) { return rqite::kVersion; }

const char* rqite_status_string(rqite_status status) {
  using rqite::ErrorCode;
  switch (status) {
    case RQITE_OK: return "ok";
    case RQITE_ERR_INVALID_ARGUMENT: return rqite::error_code_string(ErrorCode::InvalidArgument);
    case RQITE_ERR_PARSE: return rqite::error_code_string(ErrorCode::Parse);
    case RQITE_ERR_CAP_EXCEEDED: return rqite::error_code_string(ErrorCode::CapExceeded);
    case RQITE_ERR_DOMAIN: return rqite::error_code_string(ErrorCode::Domain);
    case RQITE_ERR_NOT_APPLICABLE: return rqite::error_code_string(ErrorCode::NotApplicable);
    case RQITE_ERR_DEGENERATE_OVERLAP: return rqite::error_code_string(ErrorCode::DegenerateOverlap);
    case RQITE_ERR_SCAN_EXHAUSTED: return rqite::error_code_string(ErrorCode::ScanExhausted);
    case RQITE_ERR_IO: return rqite::error_code_string(ErrorCode::Io);
    case RQITE_ERR_INTERNAL: return rqite::error_code_string(ErrorCode::Internal);
  }
  return "unknown";
}

const char* rqite_last_error(void) { return last_error.c_str(); }

void rqite_string_free(char* s) { std::free(s); }

void rqite_set_warning_callback(rqite_warning_fn fn, void* user_data) {
  if (!fn) {
    rqite::set_warning_handler(nullptr);
    return;
  }
  rqite::set_warning_handler([fn, user_data](const std::string& msg) { fn(msg.c_str(), user_data); });
}

rqite_status rqite_set_limit(const char* key, const char* value) {
  return guarded([&] {
    need(key, "key");
    need(value, "value");
    rqite::set_limit(key, value);
  });
}

rqite_status rqite_apply_config(const char* text) {
  return guarded([&] {
    need(text, "text");
    rqite::apply_limit_config(text);
  });
}

rqite_status rqite_set_workers(int workers) {
  return guarded([&] { rqite::set_worker_count(workers); });
}

rqite_status rqite_hamiltonian_parse(const char* text, int normalize_coeffs, rqite_hamiltonian** out, double* scale) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    rqite::ParseOptions opt;
    opt.normalize_coeffs = normalize_coeffs != 0;
    auto parsed = rqite::parse_hamiltonian(text, opt);
    if (scale) *scale = parsed.scale;
    *out = new rqite_hamiltonian{std::move(parsed.hamiltonian)};
  });
}

void rqite_hamiltonian_free(rqite_hamiltonian* h) { delete h; }

rqite_status rqite_hamiltonian_serialize(const rqite_hamiltonian* h, char** out) {
  return guarded([&] {
    need(h, "hamiltonian");
    need(out, "out");
    *out = dup_string(rqite::serialize_hamiltonian(h->value));
  });
}

rqite_status rqite_hamiltonian_info(const rqite_hamiltonian* h, size_t* n_qubits, size_t* n_terms, size_t* locality) {
  return guarded([&] {
    need(h, "hamiltonian");
    if (n_qubits) *n_qubits = h->value.n_qubits();
    if (n_terms) *n_terms = h->value.num_terms();
    if (locality) *locality = h->value.locality();
  });
}

rqite_status rqite_hamiltonian_normalize(const rqite_hamiltonian* h, rqite_normalize_mode mode,
                                         rqite_hamiltonian** out, double* scale) {
  return guarded([&] {
    need(h, "hamiltonian");
    need(out, "out");
    if (mode != RQITE_NORMALIZE_EXACT && mode != RQITE_NORMALIZE_BOUND)
      rqite::fail(rqite::ErrorCode::InvalidArgument, "unknown normalisation mode");
    auto r = rqite::normalize_hamiltonian(
        h->value, mode == RQITE_NORMALIZE_EXACT ? rqite::NormalizeMode::Exact : rqite::NormalizeMode::Bound);
    if (scale) *scale = r.scale;
    *out = new rqite_hamiltonian{std::move(r.hamiltonian)};
  });
}

rqite_status rqite_hamiltonian_conjugate(const rqite_hamiltonian* h, const rqite_circuit* u, rqite_hamiltonian** out) {
  return guarded([&] {
    need(h, "hamiltonian");
    need(u, "circuit");
    need(out, "out");
    *out = new rqite_hamiltonian{rqite::conjugate_by_circuit(h->value, u->value)};
  });
}

rqite_status rqite_beta_star(const rqite_hamiltonian* h, size_t* max_degree, double* beta_star) {
  return guarded([&] {
    need(h, "hamiltonian");
    const auto g = rqite::InteractionGraph::build(h->value);
    if (max_degree) *max_degree = g.max_degree();
    if (beta_star) *beta_star = rqite::beta_star(g.max_degree());
  });
}

rqite_status rqite_state_from_json(const char* text, rqite_state** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rqite_state{rqite::parse_state_json(text)};
  });
}

void rqite_state_free(rqite_state* s) { delete s; }

rqite_status rqite_circuit_from_json(const char* text, rqite_circuit** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rqite_circuit{rqite::parse_circuit_json(text)};
  });
}

void rqite_circuit_free(rqite_circuit* c) { delete c; }

rqite_status rqite_exact_partition(const rqite_hamiltonian* h, const rqite_state* psi, double shift, double beta_re,
                                   double beta_im, double* value_re, double* value_im) {
  return guarded([&] {
    need(h, "hamiltonian");
    need(psi, "state");
    const auto v = rqite::exact_partition(h->value, shift, {beta_re, beta_im}, psi->value);
    if (value_re) *value_re = v.real();
    if (value_im) *value_im = v.imag();
  });
}

rqite_status rqite_estimate_partition(const rqite_hamiltonian* h, const rqite_state* psi, double shift,
                                      double beta_re, double beta_im, double eps, double* value_re,
                                      double* value_im, double* error_bound, size_t* order) {
  return guarded([&] {
    need(h, "hamiltonian");
    need(psi, "state");
    const auto e = rqite::estimate_partition(h->value, shift, {beta_re, beta_im}, psi->value, eps);
    if (value_re) *value_re = e.value.real();
    if (value_im) *value_im = e.value.imag();
    if (error_bound) *error_bound = e.additive_error_bound;
    if (order) *order = e.order;
  });
}

rqite_status rqite_run_command(const char* command, const char* options_json, const rqite_hamiltonian* h,
                               const rqite_state* psi, const rqite_circuit* u, char** out_json) {
  return guarded([&] {
    need(command, "command");
    need(out_json, "out_json");
    nlohmann::json opts = nlohmann::json::object();
    if (options_json && *options_json) {
      try {
        opts = nlohmann::json::parse(options_json);
      } catch (const nlohmann::json::exception& e) {
        rqite::fail(rqite::ErrorCode::Parse, std::string("options: ") + e.what());
      }
    }
    rqite::CommandInputs in;
    in.hamiltonian = h ? &h->value : nullptr;
    in.state = psi ? &psi->value : nullptr;
    in.circuit = u ? &u->value : nullptr;
    *out_json = dup_string(rqite::run_command(command, opts, in).dump());
  });
}

}  // extern "C"
