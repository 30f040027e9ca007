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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace rqite {

/// Resource caps. Every cap guards a computation whose cost grows
/// exponentially in some input; exceeding one raises ErrorCode::CapExceeded.
struct Limits {
  int oracle_max_qubits = 14;
  int sparse_max_qubits = 24;
  std::size_t sparse_max_entries = std::size_t{1} << 20;
  std::size_t cluster_max_count = 2'000'000;
  std::size_t conjugation_max_terms = 100'000;
  std::size_t max_component_pairs = 4096;
  int series_max_order = 4000;
  /// Orders above this are reported as infeasible by continuation_order.
  double continuation_max_order = 1e6;
  /// Largest order continued_log_partition will actually evaluate.
  int continuation_compute_max_order = 512;
};

const Limits& limits();
void set_limits(const Limits& l);

/// Overrides one cap by name (same names as the Limits fields). Emits a
/// warning, since overriding caps can make runs arbitrarily expensive.
void set_limit(std::string_view key, std::string_view value);

/// Applies `key = value` lines; `#` starts a comment.
void apply_limit_config(std::string_view text);

using WarningHandler = std::function<void(const std::string&)>;

/// Default handler writes "rqite: warning: ..." to stderr; an empty handler
/// restores it.
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

/// Worker threads used for embarrassingly parallel loops. Initialised from
/// RQITE_WORKERS when set, otherwise 1.
int worker_count();
void set_worker_count(int workers);

/// Runs fn(i) for i in [0, n) over worker_count() threads. Callers write
/// into per-index slots, so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rqite
