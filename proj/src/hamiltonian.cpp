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

#include "rqite/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {

char pauli_letter(Pauli p) noexcept {
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  return letters[static_cast<int>(p)];
}

// -- PauliString --------------------------------------------------------------

PauliString::PauliString(std::size_t n_qubits, std::vector<Factor> factors)
    : n_qubits_(n_qubits) {
  std::erase_if(factors, [](const Factor& f) { return f.second == Pauli::I; });
  std::sort(factors.begin(), factors.end());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].first >= n_qubits)
      fail(ErrorCode::InvalidArgument, "qubit index " + std::to_string(factors[i].first) +
                                           " out of range for " + std::to_string(n_qubits) +
                                           " qubits");
    if (i > 0 && factors[i].first == factors[i - 1].first)
      fail(ErrorCode::InvalidArgument,
           "duplicate qubit index " + std::to_string(factors[i].first) + " in term");
  }
  factors_ = std::move(factors);
}

Pauli PauliString::at(std::uint32_t qubit) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{qubit, Pauli::I});
  if (it != factors_.end() && it->first == qubit) return it->second;
  return Pauli::I;
}

std::vector<std::uint32_t> PauliString::support() const {
  std::vector<std::uint32_t> out;
  out.reserve(factors_.size());
  for (const auto& [q, p] : factors_) out.push_back(q);
  return out;
}

std::uint64_t PauliString::x_mask() const noexcept {
  std::uint64_t m = 0;
  for (const auto& [q, p] : factors_)
    if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t PauliString::z_mask() const noexcept {
  std::uint64_t m = 0;
  for (const auto& [q, p] : factors_)
    if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << q;
  return m;
}

std::string PauliString::to_string() const {
  if (factors_.empty()) return "I";
  std::string s;
  for (const auto& [q, p] : factors_) {
    if (!s.empty()) s += ' ';
    s += pauli_letter(p);
    s += std::to_string(q);
  }
  return s;
}

PauliString PauliString::widened(std::size_t n_qubits) const {
  if (n_qubits < n_qubits_) fail(ErrorCode::InvalidArgument, "cannot shrink a Pauli string");
  PauliString out = *this;
  out.n_qubits_ = n_qubits;
  return out;
}

// -- LocalHamiltonian ---------------------------------------------------------

LocalHamiltonian::LocalHamiltonian(std::size_t n_qubits, std::vector<Term> terms)
    : n_qubits_(n_qubits) {
  if (n_qubits == 0) fail(ErrorCode::InvalidArgument, "Hamiltonian needs at least one qubit");
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "empty term list");
  // Merge duplicates, keeping first-appearance order.
  std::map<PauliString, std::size_t> index;
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (t.op.n_qubits() != n_qubits)
      fail(ErrorCode::InvalidArgument, "term qubit count does not match Hamiltonian");
    if (!std::isfinite(t.coefficient))
      fail(ErrorCode::InvalidArgument, "non-finite coefficient");
    auto [it, inserted] = index.try_emplace(t.op, merged.size());
    if (inserted)
      merged.push_back(std::move(t));
    else
      merged[it->second].coefficient += t.coefficient;
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == 0.0; });
  if (merged.empty()) fail(ErrorCode::InvalidArgument, "empty after merge");
  terms_ = std::move(merged);
}

std::size_t LocalHamiltonian::locality() const noexcept {
  std::size_t k = 0;
  for (const auto& t : terms_) k = std::max(k, t.op.weight());
  return k;
}

double LocalHamiltonian::coefficient_one_norm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

double LocalHamiltonian::max_abs_coefficient() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s = std::max(s, std::abs(t.coefficient));
  return s;
}

LocalHamiltonian LocalHamiltonian::scaled(double factor) const {
  if (!(factor != 0.0) || !std::isfinite(factor))
    fail(ErrorCode::InvalidArgument, "scale factor must be finite and non-zero");
  std::vector<Term> terms(terms_.begin(), terms_.end());
  for (auto& t : terms) t.coefficient *= factor;
  return LocalHamiltonian(n_qubits_, std::move(terms));
}

LocalHamiltonian LocalHamiltonian::widened(std::size_t n_qubits) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({t.coefficient, t.op.widened(n_qubits)});
  return LocalHamiltonian(n_qubits, std::move(terms));
}

// -- states -------------------------------------------------------------------

ProductState::ProductState(std::vector<Qubit> qubits) : qubits_(std::move(qubits)) {
  if (qubits_.empty()) fail(ErrorCode::InvalidArgument, "product state needs at least one qubit");
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const double n2 = std::norm(qubits_[i][0]) + std::norm(qubits_[i][1]);
    if (!std::isfinite(n2) || std::abs(std::sqrt(n2) - 1.0) > 1e-12)
      fail(ErrorCode::InvalidArgument,
           "qubit " + std::to_string(i) + " amplitudes are not normalised");
  }
}

ProductState ProductState::basis(std::size_t n_qubits, std::uint64_t bits) {
  std::vector<Qubit> q(n_qubits);
  for (std::size_t i = 0; i < n_qubits; ++i) {
    const bool one = i < 64 && ((bits >> i) & 1u);
    q[i] = one ? Qubit{0.0, 1.0} : Qubit{1.0, 0.0};
  }
  return ProductState(std::move(q));
}

complex ProductState::overlap(const ProductState& other) const {
  if (other.n_qubits() != n_qubits())
    fail(ErrorCode::InvalidArgument, "overlap of states with different qubit counts");
  complex acc = 1.0;
  for (std::size_t i = 0; i < qubits_.size(); ++i)
    acc *= std::conj(qubits_[i][0]) * other.qubits_[i][0] +
           std::conj(qubits_[i][1]) * other.qubits_[i][1];
  return acc;
}

namespace {

double norm_squared_of(std::span<const SemiClassicalState::Component> comps) {
  complex acc = 0.0;
  for (const auto& a : comps)
    for (const auto& b : comps)
      acc += std::conj(a.amplitude) * b.amplitude * a.state.overlap(b.state);
  return acc.real();
}

void check_components(std::span<const SemiClassicalState::Component> comps) {
  if (comps.empty()) fail(ErrorCode::InvalidArgument, "state needs at least one component");
  const std::size_t n = comps.front().state.n_qubits();
  for (const auto& c : comps) {
    if (c.state.n_qubits() != n)
      fail(ErrorCode::InvalidArgument, "state components have different qubit counts");
    if (!std::isfinite(c.amplitude.real()) || !std::isfinite(c.amplitude.imag()))
      fail(ErrorCode::InvalidArgument, "non-finite amplitude");
  }
}

}  // namespace

SemiClassicalState::SemiClassicalState(std::vector<Component> components)
    : components_(std::move(components)) {
  check_components(components_);
  const double n2 = norm_squared_of(components_);
  if (std::abs(n2 - 1.0) > 1e-10)
    fail(ErrorCode::InvalidArgument,
         "state is not normalised (<psi|psi> = " + std::to_string(n2) + ")");
}

SemiClassicalState SemiClassicalState::normalized(std::vector<Component> components) {
  check_components(components);
  const double n2 = norm_squared_of(components);
  if (!(n2 > 1e-300)) fail(ErrorCode::InvalidArgument, "state has zero norm");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& c : components) c.amplitude *= s;
  return SemiClassicalState(std::move(components));
}

SemiClassicalState SemiClassicalState::single(ProductState state) {
  std::vector<Component> c;
  c.push_back({1.0, std::move(state)});
  return SemiClassicalState(std::move(c));
}

double SemiClassicalState::norm_squared() const { return norm_squared_of(components_); }

// -- circuits -----------------------------------------------------------------

namespace {

bool is_unitary(const std::vector<complex>& m, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      complex s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += std::conj(m[k * dim + i]) * m[k * dim + j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-10) return false;
    }
  return true;
}

}  // namespace

ShallowCircuit::ShallowCircuit(std::size_t n_qubits, std::vector<Gate> gates)
    : n_qubits_(n_qubits), gates_(std::move(gates)) {
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const auto& gate = gates_[g];
    const std::string where = "gate " + std::to_string(g);
    if (gate.targets.empty() || gate.targets.size() > 2)
      fail(ErrorCode::InvalidArgument, where + ": gates act on one or two qubits");
    for (auto t : gate.targets)
      if (t >= n_qubits) fail(ErrorCode::InvalidArgument, where + ": target out of range");
    if (gate.targets.size() == 2 && gate.targets[0] == gate.targets[1])
      fail(ErrorCode::InvalidArgument, where + ": repeated target");
    const std::size_t dim = std::size_t{1} << gate.targets.size();
    if (gate.matrix.size() != dim * dim)
      fail(ErrorCode::InvalidArgument, where + ": matrix has wrong size");
    if (!is_unitary(gate.matrix, dim))
      fail(ErrorCode::InvalidArgument, where + ": matrix is not unitary");
  }
}

ShallowCircuit ShallowCircuit::preparing(const ProductState& state) {
  std::vector<Gate> gates;
  for (std::uint32_t q = 0; q < state.n_qubits(); ++q) {
    const auto& [a, b] = state.qubit(q);
    gates.push_back({{q}, {a, -std::conj(b), b, std::conj(a)}});
  }
  return ShallowCircuit(state.n_qubits(), std::move(gates));
}

std::size_t ShallowCircuit::depth() const {
  std::vector<std::size_t> layer(n_qubits_, 0);
  std::size_t d = 0;
  for (const auto& g : gates_) {
    std::size_t l = 0;
    for (auto t : g.targets) l = std::max(l, layer[t]);
    ++l;
    for (auto t : g.targets) layer[t] = l;
    d = std::max(d, l);
  }
  return d;
}

// -- operations ---------------------------------------------------------------

namespace {

const complex kI{0.0, 1.0};

// Rotates one qubit so its first non-zero amplitude is real and positive and
// returns the removed phase.
complex canonical_gauge(ProductState::Qubit& q) {
  const complex lead = std::abs(q[0]) > 1e-300 ? q[0] : q[1];
  const complex ph = lead / std::abs(lead);
  q[0] /= ph;
  q[1] /= ph;
  if (std::abs(q[0]) > 1e-300)
    q[0] = std::abs(q[0]);
  else
    q[1] = std::abs(q[1]);
  return ph;
}

}  // namespace

PauliAction apply_pauli(const PauliString& p, const ProductState& s) {
  if (p.n_qubits() != s.n_qubits())
    fail(ErrorCode::InvalidArgument, "Pauli string and state have different qubit counts");
  std::vector<ProductState::Qubit> out(s.qubits().begin(), s.qubits().end());
  complex phase = 1.0;
  for (const auto& [q, letter] : p.factors()) {
    auto& v = out[q];
    const complex a = v[0], b = v[1];
    switch (letter) {
      case Pauli::X: v = {b, a}; break;
      case Pauli::Y: v = {-kI * b, kI * a}; break;
      case Pauli::Z: v = {a, -b}; break;
      case Pauli::I: break;
    }
    phase *= canonical_gauge(v);
  }
  return {phase, ProductState(std::move(out))};
}

namespace {

using Local = std::vector<complex>;  // row-major dim x dim

Local single_pauli(Pauli p) {
  switch (p) {
    case Pauli::I: return {1.0, 0.0, 0.0, 1.0};
    case Pauli::X: return {0.0, 1.0, 1.0, 0.0};
    case Pauli::Y: return {0.0, -kI, kI, 0.0};
    case Pauli::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

Local kron(const Local& a, std::size_t da, const Local& b, std::size_t db) {
  const std::size_t d = da * db;
  Local out(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out[(i * db + k) * d + (j * db + l)] = a[i * da + j] * b[k * db + l];
  return out;
}

// Local Pauli index: letter of target t_j occupies base-4 digit (k-1-j).
Local local_pauli(std::size_t code, std::size_t k) {
  Local m = {1.0};
  std::size_t dim = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const auto letter = static_cast<Pauli>((code >> (2 * (k - 1 - j))) & 3u);
    m = kron(m, dim, single_pauli(letter), 2);
    dim *= 2;
  }
  return m;
}

// decomposition[code] = list of (code', coefficient) with
// G^dagger P_code G = sum coefficient P_code'.
std::vector<std::vector<std::pair<std::size_t, double>>> gate_table(const ShallowCircuit::Gate& g) {
  const std::size_t k = g.targets.size();
  const std::size_t dim = std::size_t{1} << k;
  const std::size_t n_codes = std::size_t{1} << (2 * k);
  std::vector<Local> basis(n_codes);
  for (std::size_t c = 0; c < n_codes; ++c) basis[c] = local_pauli(c, k);
  std::vector<std::vector<std::pair<std::size_t, double>>> table(n_codes);
  for (std::size_t c = 0; c < n_codes; ++c) {
    // M = G^dagger P G
    Local pg(dim * dim, 0.0), m(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t l = 0; l < dim; ++l) pg[i * dim + j] += basis[c][i * dim + l] * g.matrix[l * dim + j];
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t l = 0; l < dim; ++l) m[i * dim + j] += std::conj(g.matrix[l * dim + i]) * pg[l * dim + j];
    for (std::size_t q = 0; q < n_codes; ++q) {
      complex tr = 0.0;  // Tr(Q M), Q Hermitian
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t l = 0; l < dim; ++l) tr += basis[q][i * dim + l] * m[l * dim + i];
      const double coeff = tr.real() / static_cast<double>(dim);
      if (std::abs(coeff) > 1e-15) table[c].emplace_back(q, coeff);
    }
  }
  return table;
}

}  // namespace

LocalHamiltonian conjugate_by_circuit(const LocalHamiltonian& h, const ShallowCircuit& u) {
  if (u.n_qubits() > h.n_qubits())
    fail(ErrorCode::InvalidArgument, "circuit acts on more qubits than the Hamiltonian");
  const std::size_t n = h.n_qubits();
  const std::size_t cap = limits().conjugation_max_terms;

  std::map<PauliString, double> current;
  for (const auto& t : h.terms()) current[t.op] += t.coefficient;

  const auto gates = u.gates();
  for (std::size_t gi = gates.size(); gi-- > 0;) {
    const auto& g = gates[gi];
    const std::size_t k = g.targets.size();
    const auto table = gate_table(g);
    std::map<PauliString, double> next;
    for (const auto& [op, coeff] : current) {
      std::size_t code = 0;
      bool touches = false;
      for (std::size_t j = 0; j < k; ++j) {
        const Pauli p = op.at(g.targets[j]);
        touches |= p != Pauli::I;
        code |= static_cast<std::size_t>(p) << (2 * (k - 1 - j));
      }
      if (!touches) {
        next[op] += coeff;
        continue;
      }
      std::vector<PauliString::Factor> rest;
      for (const auto& f : op.factors())
        if (std::find(g.targets.begin(), g.targets.end(), f.first) == g.targets.end())
          rest.push_back(f);
      for (const auto& [q, c] : table[code]) {
        auto factors = rest;
        for (std::size_t j = 0; j < k; ++j)
          factors.emplace_back(g.targets[j], static_cast<Pauli>((q >> (2 * (k - 1 - j))) & 3u));
        next[PauliString(n, std::move(factors))] += coeff * c;
      }
    }
    std::erase_if(next, [](const auto& kv) { return std::abs(kv.second) < 1e-14; });
    if (next.size() > cap)
      fail(ErrorCode::CapExceeded, "conjugated Hamiltonian has " + std::to_string(next.size()) +
                                       " terms, above the cap of " + std::to_string(cap) +
                                       " (circuit too deep for the cluster backend)");
    current = std::move(next);
  }

  std::vector<Term> terms;
  terms.reserve(current.size());
  for (auto& [op, c] : current) terms.push_back({c, op});
  return LocalHamiltonian(n, std::move(terms));
}

}  // namespace rqite
