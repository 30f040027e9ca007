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

// Independent reference computations for tests. Nothing here calls into the
// library's dense or series code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "rqite/hamiltonian.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli_matrix(rqite::Pauli p) {
  Mat m(2, 2);
  switch (p) {
    case rqite::Pauli::I: m << 1, 0, 0, 1; break;
    case rqite::Pauli::X: m << 0, 1, 1, 0; break;
    case rqite::Pauli::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
    case rqite::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit q is bit q of the basis index, so the highest qubit is the leftmost
// Kronecker factor.
inline Mat dense(const rqite::PauliString& p) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t q = p.n_qubits(); q-- > 0;) out = kron(out, pauli_matrix(p.at(static_cast<std::uint32_t>(q))));
  return out;
}

inline Mat dense(const rqite::LocalHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Mat out = Mat::Zero(dim, dim);
  for (const auto& t : h.terms()) out += t.coefficient * dense(t.op);
  return out;
}

inline Vec vec(const rqite::ProductState& s) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t q = s.n_qubits(); q-- > 0;) {
    Mat v(2, 1);
    v << s.qubit(q)[0], s.qubit(q)[1];
    out = kron(out, v);
  }
  return out.col(0);
}

inline Vec vec(const rqite::SemiClassicalState& psi) {
  Vec out = Vec::Zero(Eigen::Index{1} << psi.n_qubits());
  for (const auto& c : psi.components()) out += c.amplitude * vec(c.state);
  return out;
}

// Embeds a k-qubit gate (targets[0] most significant locally) into n qubits.
inline Mat dense(const rqite::ShallowCircuit::Gate& g, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n, k = g.targets.size(), local = std::size_t{1} << k;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  auto local_index = [&](std::size_t b) {
    std::size_t l = 0;
    for (std::size_t i = 0; i < k; ++i) l = (l << 1) | ((b >> g.targets[i]) & 1u);
    return l;
  };
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t lc = local_index(col);
    for (std::size_t lr = 0; lr < local; ++lr) {
      std::size_t row = col;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t bit = (lr >> (k - 1 - i)) & 1u;
        row = (row & ~(std::size_t{1} << g.targets[i])) | (bit << g.targets[i]);
      }
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += g.matrix[lr * local + lc];
    }
  }
  return out;
}

// Gates apply in list order: U = G_last ... G_first.
inline Mat dense(const rqite::ShallowCircuit& u, std::size_t n) {
  Mat out = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& g : u.gates()) out = dense(g, n) * out;
  return out;
}

inline cd partition(const Mat& h, const Vec& psi, cd beta, double shift = 0.0) {
  const Mat e = (-beta * (h - shift * Mat::Identity(h.rows(), h.cols()))).exp();
  return psi.dot(e * psi);
}

// Smallest eigenvalue by power iteration on c I - H.
inline double ground_energy_power(const Mat& h, int iterations = 20000) {
  const double c = h.cwiseAbs().rowwise().sum().maxCoeff();
  const Mat b = c * Mat::Identity(h.rows(), h.cols()) - h;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  Vec v(h.rows());
  for (auto& x : v) x = cd(nd(rng), nd(rng));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vec w = b * v;
    const double next = std::real(v.dot(w));
    v = w.normalized();
    if (it > 100 && std::abs(next - lambda) < 1e-15 * c) break;
    lambda = next;
  }
  return c - std::real(v.dot(b * v));
}

// All size-m multisets over n items as sorted index tuples.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Connectivity of a multiset under an adjacency predicate; copies of one item
// are mutually adjacent.
inline bool multiset_connected(const std::vector<std::size_t>& ms,
                               const std::function<bool(std::size_t, std::size_t)>& adj) {
  std::vector<std::size_t> distinct = ms;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<bool> seen(distinct.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < distinct.size(); ++u)
      if (!seen[u] && adj(distinct[v], distinct[u])) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline bool supports_overlap(const rqite::PauliString& a, const rqite::PauliString& b) {
  for (const auto& [q, p] : a.factors())
    if (b.at(q) != rqite::Pauli::I) return true;
  return false;
}

inline rqite::Pauli random_pauli(std::mt19937_64& rng) {
  return static_cast<rqite::Pauli>(1 + rng() % 3);
}

// Nearest-neighbour 2-local chain with random Pauli pairs plus random
// single-qubit fields; |S| <= max_terms.
inline rqite::LocalHamiltonian random_chain(std::size_t n, std::size_t max_terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<rqite::Term> terms;
  for (std::uint32_t q = 0; q + 1 < n && terms.size() < max_terms; ++q)
    terms.push_back({coef(rng), rqite::PauliString(n, {{q, random_pauli(rng)}, {q + 1, random_pauli(rng)}})});
  for (std::uint32_t q = 0; q < n && terms.size() < max_terms; ++q)
    if (rng() % 2) terms.push_back({coef(rng), rqite::PauliString(n, {{q, random_pauli(rng)}})});
  if (terms.empty()) terms.push_back({coef(rng), rqite::PauliString(n, {{0, random_pauli(rng)}})});
  return rqite::LocalHamiltonian(n, std::move(terms));
}

inline rqite::ProductState random_product(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<rqite::ProductState::Qubit> qs(n);
  for (auto& q : qs) {
    q = {cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng))};
    const double norm = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    q[0] /= norm;
    q[1] /= norm;
  }
  return rqite::ProductState(std::move(qs));
}

}  // namespace oracle
