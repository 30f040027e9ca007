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

#include "rqite/limits.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "rqite/error.hpp"

namespace rqite {
namespace {

std::mutex& state_mutex() {
  static std::mutex m;
  return m;
}

Limits& mutable_limits() {
  static Limits l;
  return l;
}

void default_warning(const std::string& msg) { std::cerr << "rqite: warning: " << msg << '\n'; }

WarningHandler& handler() {
  static WarningHandler h = default_warning;
  return h;
}

int initial_workers() {
  if (const char* env = std::getenv("RQITE_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::atomic<int>& workers() {
  static std::atomic<int> w{initial_workers()};
  return w;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || out <= T{0})
    fail(ErrorCode::InvalidArgument,
         "invalid value '" + std::string(value) + "' for limit " + std::string(key));
  return out;
}

}  // namespace

const Limits& limits() { return mutable_limits(); }

void set_limits(const Limits& l) {
  std::lock_guard lock(state_mutex());
  mutable_limits() = l;
}

void set_limit(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  Limits l = limits();
  if (key == "oracle_max_qubits") {
    l.oracle_max_qubits = parse_number<int>(key, value);
  } else if (key == "sparse_max_qubits") {
    l.sparse_max_qubits = parse_number<int>(key, value);
    if (l.sparse_max_qubits > 32)
      fail(ErrorCode::InvalidArgument, "sparse_max_qubits cannot exceed 32");
  } else if (key == "sparse_max_entries") {
    l.sparse_max_entries = parse_number<std::size_t>(key, value);
  } else if (key == "cluster_max_count") {
    l.cluster_max_count = parse_number<std::size_t>(key, value);
  } else if (key == "conjugation_max_terms") {
    l.conjugation_max_terms = parse_number<std::size_t>(key, value);
  } else if (key == "max_component_pairs") {
    l.max_component_pairs = parse_number<std::size_t>(key, value);
  } else if (key == "series_max_order") {
    l.series_max_order = parse_number<int>(key, value);
  } else if (key == "continuation_max_order") {
    l.continuation_max_order = parse_number<double>(key, value);
  } else if (key == "continuation_compute_max_order") {
    l.continuation_compute_max_order = parse_number<int>(key, value);
  } else if (key == "workers") {
    set_worker_count(parse_number<int>(key, value));
    return;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown limit '" + std::string(key) + "'");
  }
  set_limits(l);
  warn("limit " + std::string(key) + " overridden to " + std::string(value));
}

void apply_limit_config(std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::Parse, "config line " + std::to_string(line_no) + ": expected key = value");
    set_limit(line.substr(0, eq), line.substr(eq + 1));
  }
}

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(state_mutex());
  handler() = h ? std::move(h) : WarningHandler(default_warning);
}

void warn(const std::string& message) {
  std::lock_guard lock(state_mutex());
  if (handler()) handler()(message);
}

int worker_count() { return workers().load(); }

void set_worker_count(int w) { workers().store(w < 1 ? 1 : w); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rqite
