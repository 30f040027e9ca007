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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rqite {

using complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter(Pauli p) noexcept;

/// Tensor product of single-qubit Pauli operators, stored sparsely as
/// (qubit, letter) pairs sorted by qubit. Identity factors are implicit.
class PauliString {
 public:
  using Factor = std::pair<std::uint32_t, Pauli>;

  PauliString() = default;

  /// Validates indices (< n_qubits, no repeats) and drops identity factors.
  PauliString(std::size_t n_qubits, std::vector<Factor> factors);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::span<const Factor> factors() const noexcept { return factors_; }
  std::size_t weight() const noexcept { return factors_.size(); }
  bool is_identity() const noexcept { return factors_.empty(); }

  Pauli at(std::uint32_t qubit) const noexcept;
  std::vector<std::uint32_t> support() const;

  /// Bit masks of qubits carrying X/Y (flip) and Y/Z (phase). Only valid for
  /// n_qubits <= 64.
  std::uint64_t x_mask() const noexcept;
  std::uint64_t z_mask() const noexcept;

  std::string to_string() const;

  PauliString widened(std::size_t n_qubits) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.factors_ <=> b.factors_;
  }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Factor> factors_;
};

struct Term {
  double coefficient = 0.0;
  PauliString op;
};

/// H = sum_X lambda_X h_X with distinct Pauli strings h_X. Duplicate inputs are
/// merged by adding coefficients; exact zeros are pruned.
class LocalHamiltonian {
 public:
  LocalHamiltonian(std::size_t n_qubits, std::vector<Term> terms);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }

  /// Largest support size over all terms.
  std::size_t locality() const noexcept;
  /// sum |lambda_X|, an upper bound on the operator norm.
  double coefficient_one_norm() const noexcept;
  double max_abs_coefficient() const noexcept;

  LocalHamiltonian scaled(double factor) const;
  LocalHamiltonian widened(std::size_t n_qubits) const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Term> terms_;
};

/// Per-qubit normalised amplitude pairs (amp of |0>, amp of |1>).
class ProductState {
 public:
  using Qubit = std::array<complex, 2>;

  explicit ProductState(std::vector<Qubit> qubits);

  static ProductState basis(std::size_t n_qubits, std::uint64_t bits);
  static ProductState zeros(std::size_t n_qubits) { return basis(n_qubits, 0); }

  std::size_t n_qubits() const noexcept { return qubits_.size(); }
  const Qubit& qubit(std::size_t i) const { return qubits_[i]; }
  std::span<const Qubit> qubits() const noexcept { return qubits_; }

  /// <this|other>.
  complex overlap(const ProductState& other) const;

 private:
  std::vector<Qubit> qubits_;
};

/// |psi> = sum_j a_j |x_j> over product states, normalised so <psi|psi> = 1.
class SemiClassicalState {
 public:
  struct Component {
    complex amplitude;
    ProductState state;
  };

  explicit SemiClassicalState(std::vector<Component> components);

  /// Rescales the amplitudes so the state has unit norm.
  static SemiClassicalState normalized(std::vector<Component> components);
  static SemiClassicalState single(ProductState state);

  std::size_t n_qubits() const noexcept { return components_.front().state.n_qubits(); }
  std::size_t size() const noexcept { return components_.size(); }
  std::span<const Component> components() const noexcept { return components_; }

  /// <psi|psi> including cross terms between non-orthogonal components.
  double norm_squared() const;

 private:
  std::vector<Component> components_;
};

/// Ordered list of one- and two-qubit unitaries. U = G_last ... G_first.
class ShallowCircuit {
 public:
  struct Gate {
    std::vector<std::uint32_t> targets;
    /// Row-major 2^k x 2^k matrix; the first target is the most significant
    /// bit of the local index.
    std::vector<complex> matrix;
  };

  ShallowCircuit(std::size_t n_qubits, std::vector<Gate> gates);

  /// Circuit of single-qubit gates preparing `state` from |0...0>.
  static ShallowCircuit preparing(const ProductState& state);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::span<const Gate> gates() const noexcept { return gates_; }
  std::size_t depth() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
};

// -- operations ---------------------------------------------------------------

struct ParseOptions {
  /// Qubit count; inferred from a "# n_qubits: N" comment or the largest
  /// index when absent.
  std::optional<std::size_t> n_qubits;
  /// Divide all coefficients by max |lambda| so that |lambda_X| <= 1.
  bool normalize_coeffs = false;
};

struct ParsedHamiltonian {
  LocalHamiltonian hamiltonian;
  /// Factor the input coefficients were divided by (1 when not normalised).
  double scale = 1.0;
};

/// Parses `<coeff> <P><idx> [<P><idx> ...]` lines; `#` starts a comment.
ParsedHamiltonian parse_hamiltonian(std::string_view text, const ParseOptions& options = {});

/// Canonical text form; parse(serialize(H)) reproduces H exactly.
std::string serialize_hamiltonian(const LocalHamiltonian& h);

struct PauliAction {
  complex phase;
  ProductState state;
};

/// p|s> as a phase times a product state in canonical gauge (first non-zero
/// amplitude of every qubit real and positive).
PauliAction apply_pauli(const PauliString& p, const ProductState& s);

/// Exact Pauli-basis expansion of U^dagger H U. Terms with |coefficient| below
/// 1e-14 are dropped.
LocalHamiltonian conjugate_by_circuit(const LocalHamiltonian& h, const ShallowCircuit& u);

enum class NormalizeMode { Exact, Bound };

struct NormalizedHamiltonian {
  LocalHamiltonian hamiltonian;
  double scale;
};

/// H / scale with scale = ||H|| (Exact, dense spectrum) or sum |lambda| (Bound).
NormalizedHamiltonian normalize_hamiltonian(const LocalHamiltonian& h, NormalizeMode mode);

// -- file formats -------------------------------------------------------------

SemiClassicalState parse_state_json(std::string_view text);
std::string state_to_json(const SemiClassicalState& state);
ShallowCircuit parse_circuit_json(std::string_view text);

}  // namespace rqite
