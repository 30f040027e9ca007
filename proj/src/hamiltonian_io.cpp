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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "rqite/error.hpp"
#include "rqite/hamiltonian.hpp"
#include "rqite/limits.hpp"

namespace rqite {
namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

bool parse_double(std::string_view tok, double& out) {
  // from_chars for double is available in libstdc++ 11.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size() && std::isfinite(out);
}

std::optional<std::size_t> directive_qubits(std::string_view comment) {
  // "# n_qubits: N"
  comment = trim(comment.substr(1));
  constexpr std::string_view key = "n_qubits";
  if (comment.substr(0, key.size()) != key) return std::nullopt;
  comment = trim(comment.substr(key.size()));
  if (comment.empty() || (comment.front() != ':' && comment.front() != '=')) return std::nullopt;
  comment = trim(comment.substr(1));
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(comment.data(), comment.data() + comment.size(), n);
  if (ec != std::errc() || p != comment.data() + comment.size()) return std::nullopt;
  return n;
}

struct RawTerm {
  double coefficient;
  std::vector<PauliString::Factor> factors;
  std::size_t line;
};

}  // namespace

ParsedHamiltonian parse_hamiltonian(std::string_view text, const ParseOptions& options) {
  std::vector<RawTerm> raw;
  std::optional<std::size_t> declared = options.n_qubits;
  std::size_t max_index_plus_one = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      if (!options.n_qubits) {
        if (auto n = directive_qubits(line.substr(hash))) declared = *n;
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    std::istringstream in{std::string(line)};
    std::string tok;
    in >> tok;
    RawTerm t{0.0, {}, line_no};
    if (!parse_double(tok, t.coefficient)) parse_fail(line_no, "bad coefficient '" + tok + "'");
    while (in >> tok) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
      Pauli p;
      switch (c) {
        case 'I': p = Pauli::I; break;
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default: parse_fail(line_no, "bad Pauli factor '" + tok + "'");
      }
      std::uint32_t idx = 0;
      const char* b = tok.data() + 1;
      const char* e = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(b, e, idx);
      if (b == e || ec != std::errc() || ptr != e) parse_fail(line_no, "bad qubit index in '" + tok + "'");
      for (const auto& f : t.factors)
        if (f.first == idx) parse_fail(line_no, "duplicate qubit index " + std::to_string(idx));
      t.factors.emplace_back(idx, p);
      max_index_plus_one = std::max<std::size_t>(max_index_plus_one, std::size_t{idx} + 1);
    }
    raw.push_back(std::move(t));
    if (end == text.size()) break;
  }

  if (raw.empty()) fail(ErrorCode::Parse, "empty term list");
  const std::size_t n = declared ? *declared : std::max<std::size_t>(max_index_plus_one, 1);
  if (n == 0) fail(ErrorCode::Parse, "n_qubits must be positive");
  for (const auto& t : raw)
    for (const auto& f : t.factors)
      if (f.first >= n)
        parse_fail(t.line, "qubit index " + std::to_string(f.first) + " >= n_qubits " + std::to_string(n));

  std::vector<Term> terms;
  terms.reserve(raw.size());
  for (auto& t : raw) terms.push_back({t.coefficient, PauliString(n, std::move(t.factors))});

  try {
    LocalHamiltonian h(n, std::move(terms));
    if (!options.normalize_coeffs) return {std::move(h), 1.0};
    const double scale = h.max_abs_coefficient();
    return {h.scaled(1.0 / scale), scale};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::Parse, e.what());
    throw;
  }
}

std::string serialize_hamiltonian(const LocalHamiltonian& h) {
  std::string out = "# n_qubits: " + std::to_string(h.n_qubits()) + "\n";
  char buf[32];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    out += buf;
    for (const auto& [q, p] : t.op.factors()) {
      out += ' ';
      out += pauli_letter(p);
      out += std::to_string(q);
    }
    out += '\n';
  }
  return out;
}

// -- JSON files ---------------------------------------------------------------

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

template <typename F>
auto json_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

complex read_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  fail(ErrorCode::Parse, "expected a number or [re, im] pair");
}

ProductState::Qubit read_qubit(const json& q, std::size_t index) {
  if (!q.is_array() || q.size() != 4)
    fail(ErrorCode::Parse, "qubit " + std::to_string(index) + " must be [a0_re, a0_im, a1_re, a1_im]");
  ProductState::Qubit v{complex{q[0].get<double>(), q[1].get<double>()},
                        complex{q[2].get<double>(), q[3].get<double>()}};
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  if (!(n > 0.0) || !std::isfinite(n))
    fail(ErrorCode::Parse, "qubit " + std::to_string(index) + " has zero norm");
  if (std::abs(n - 1.0) > 1e-10)
    warn("qubit " + std::to_string(index) + " amplitudes renormalised (norm " + std::to_string(n) + ")");
  v[0] /= n;
  v[1] /= n;
  return v;
}

}  // namespace

SemiClassicalState parse_state_json(std::string_view text) {
  const json doc = parse_json(text, "state file");
  return json_guard("state file", [&] {
    const auto n = doc.at("n_qubits").get<std::size_t>();
    const auto& comps = doc.at("components");
    if (!comps.is_array() || comps.empty()) fail(ErrorCode::Parse, "state file: no components");
    std::vector<SemiClassicalState::Component> out;
    for (const auto& c : comps) {
      const complex amp{c.value("amp_re", 0.0), c.value("amp_im", 0.0)};
      const auto& qs = c.at("qubits");
      if (!qs.is_array() || qs.size() != n)
        fail(ErrorCode::Parse, "state file: component has " + std::to_string(qs.size()) +
                                   " qubits, expected " + std::to_string(n));
      std::vector<ProductState::Qubit> qubits;
      for (std::size_t i = 0; i < qs.size(); ++i) qubits.push_back(read_qubit(qs[i], i));
      out.push_back({amp, ProductState(std::move(qubits))});
    }
    complex n2 = 0.0;
    for (const auto& a : out)
      for (const auto& b : out) n2 += std::conj(a.amplitude) * b.amplitude * a.state.overlap(b.state);
    if (std::abs(n2.real() - 1.0) > 1e-10)
      warn("state renormalised (<psi|psi> = " + std::to_string(n2.real()) + ")");
    return SemiClassicalState::normalized(std::move(out));
  });
}

std::string state_to_json(const SemiClassicalState& state) {
  json comps = json::array();
  for (const auto& c : state.components()) {
    json qs = json::array();
    for (const auto& q : c.state.qubits())
      qs.push_back({q[0].real(), q[0].imag(), q[1].real(), q[1].imag()});
    comps.push_back({{"amp_re", c.amplitude.real()}, {"amp_im", c.amplitude.imag()}, {"qubits", qs}});
  }
  return json{{"n_qubits", state.n_qubits()}, {"components", comps}}.dump();
}

namespace {

std::vector<complex> named_gate(std::string name) {
  for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const double r = 1.0 / std::sqrt(2.0);
  const complex i{0.0, 1.0};
  if (name == "H") return {r, r, r, -r};
  if (name == "X") return {0.0, 1.0, 1.0, 0.0};
  if (name == "Y") return {0.0, -i, i, 0.0};
  if (name == "Z") return {1.0, 0.0, 0.0, -1.0};
  if (name == "S") return {1.0, 0.0, 0.0, i};
  if (name == "CNOT" || name == "CX")
    return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
  if (name == "CZ") return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
  fail(ErrorCode::Parse, "circuit file: unknown gate name '" + name + "'");
}

}  // namespace

ShallowCircuit parse_circuit_json(std::string_view text) {
  const json doc = parse_json(text, "circuit file");
  return json_guard("circuit file", [&] {
    const json& gates = doc.is_array() ? doc : doc.at("gates");
    std::size_t n = 0;
    if (doc.is_object() && doc.contains("n_qubits")) n = doc.at("n_qubits").get<std::size_t>();
    std::vector<ShallowCircuit::Gate> out;
    for (const auto& g : gates) {
      ShallowCircuit::Gate gate;
      gate.targets = g.at("targets").get<std::vector<std::uint32_t>>();
      if (g.contains("matrix")) {
        for (const auto& v : g.at("matrix")) {
          if (v.is_array() && v.size() != 2 && !v.empty() && v[0].is_array()) {
            for (const auto& e : v) gate.matrix.push_back(read_complex(e));  // nested rows
          } else {
            gate.matrix.push_back(read_complex(v));
          }
        }
      } else {
        gate.matrix = named_gate(g.at("name").get<std::string>());
      }
      for (auto t : gate.targets) n = std::max<std::size_t>(n, std::size_t{t} + 1);
      out.push_back(std::move(gate));
    }
    try {
      return ShallowCircuit(n, std::move(out));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, std::string("circuit file: ") + e.what());
    }
  });
}

}  // namespace rqite
