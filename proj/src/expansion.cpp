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

#include "rqite/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rqite/error.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"

namespace rqite {
namespace {

using Key = std::uint64_t;

struct Entry {
  Key key;
  complex amp;
};

// Action of one Pauli term in the propagation basis: for every local input
// pattern on the support, the list of (output bits, amplitude).
struct TermAction {
  double coefficient;
  Key mask;
  std::vector<std::uint32_t> qubits;
  std::vector<std::vector<std::pair<Key, complex>>> outputs;
};

using QubitTable = std::array<std::array<std::array<complex, 2>, 2>, 4>;  // [letter][i][j]

QubitTable qubit_table(const ProductState::Qubit& v) {
  const std::array<std::array<complex, 2>, 2> b = {{{v[0], v[1]}, {-std::conj(v[1]), std::conj(v[0])}}};
  const complex i1{0.0, 1.0};
  QubitTable t{};
  for (int l = 0; l < 4; ++l)
    for (int c = 0; c < 2; ++c) {
      // P_l b_c
      const complex a0 = b[c][0], a1 = b[c][1];
      std::array<complex, 2> pv;
      switch (l) {
        case 0: pv = {a0, a1}; break;
        case 1: pv = {a1, a0}; break;
        case 2: pv = {-i1 * a1, i1 * a0}; break;
        default: pv = {a0, -a1}; break;
      }
      for (int r = 0; r < 2; ++r) {
        complex e = std::conj(b[r][0]) * pv[0] + std::conj(b[r][1]) * pv[1];
        if (std::abs(e) < 1e-14) e = 0.0;
        t[l][r][c] = e;
      }
    }
  return t;
}

std::vector<TermAction> term_actions(const LocalHamiltonian& h, const std::vector<QubitTable>& tables) {
  std::vector<TermAction> out;
  for (const auto& term : h.terms()) {
    TermAction a;
    a.coefficient = term.coefficient;
    a.mask = 0;
    std::vector<Pauli> letters;
    for (const auto& [q, p] : term.op.factors()) {
      a.qubits.push_back(q);
      letters.push_back(p);
      a.mask |= Key{1} << q;
    }
    const std::size_t k = a.qubits.size();
    a.outputs.resize(std::size_t{1} << k);
    for (std::size_t in = 0; in < a.outputs.size(); ++in) {
      // Tensor product of the per-qubit columns.
      std::vector<std::pair<Key, complex>> cur{{0, 1.0}};
      for (std::size_t j = 0; j < k; ++j) {
        const int c = static_cast<int>((in >> j) & 1u);
        const auto& t = tables[a.qubits[j]][static_cast<int>(letters[j])];
        std::vector<std::pair<Key, complex>> next;
        for (const auto& [bits, amp] : cur)
          for (int r = 0; r < 2; ++r)
            if (t[r][c] != 0.0) next.emplace_back(bits | (Key(r) << a.qubits[j]), amp * t[r][c]);
        cur = std::move(next);
      }
      a.outputs[in] = std::move(cur);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t local_pattern(Key key, const std::vector<std::uint32_t>& qubits) {
  std::size_t p = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) p |= static_cast<std::size_t>((key >> qubits[j]) & 1u) << j;
  return p;
}

void merge_sorted(std::vector<Entry>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    Entry e = v[r++];
    while (r < v.size() && v[r].key == e.key) e.amp += v[r++].amp;
    if (e.amp != 0.0) v[w++] = e;
  }
  v.resize(w);
}

}  // namespace

std::vector<complex> moment_series(const LocalHamiltonian& h, const ProductState& x,
                                   const ProductState& y, std::size_t order) {
  const std::size_t n = h.n_qubits();
  if (x.n_qubits() != n || y.n_qubits() != n)
    fail(ErrorCode::InvalidArgument, "state and Hamiltonian have different qubit counts");
  const auto& lim = limits();
  if (n > static_cast<std::size_t>(lim.sparse_max_qubits))
    fail(ErrorCode::CapExceeded, std::to_string(n) + " qubits exceeds the sparse propagation cap of " +
                                     std::to_string(lim.sparse_max_qubits));

  std::vector<QubitTable> tables(n);
  std::vector<std::array<complex, 2>> bra(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto& v = x.qubit(q);
    tables[q] = qubit_table(v);
    const auto& u = y.qubit(q);
    bra[q] = {std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1],
              std::conj(u[0]) * -std::conj(v[1]) + std::conj(u[1]) * std::conj(v[0])};
  }
  const auto actions = term_actions(h, tables);

  auto project = [&](const std::vector<Entry>& w) {
    complex acc = 0.0;
    for (const auto& e : w) {
      complex b = 1.0;
      for (std::size_t q = 0; q < n && b != 0.0; ++q) b *= bra[q][(e.key >> q) & 1u];
      acc += b * e.amp;
    }
    return acc;
  };

  std::vector<complex> s(order + 1, 0.0);
  std::vector<Entry> w{{0, 1.0}};
  s[0] = project(w);
  std::vector<Entry> next;
  for (std::size_t m = 1; m <= order && !w.empty(); ++m) {
    next.clear();
    const double scale = -1.0 / static_cast<double>(m);
    for (const auto& e : w)
      for (const auto& a : actions) {
        const complex c = e.amp * (a.coefficient * scale);
        const Key rest = e.key & ~a.mask;
        for (const auto& [bits, amp] : a.outputs[local_pattern(e.key, a.qubits)])
          next.push_back({rest | bits, c * amp});
      }
    merge_sorted(next);
    if (next.size() > lim.sparse_max_entries)
      fail(ErrorCode::CapExceeded, "sparse vector has " + std::to_string(next.size()) +
                                       " entries, above the cap of " + std::to_string(lim.sparse_max_entries));
    std::swap(w, next);
    s[m] = project(w);
  }
  return s;
}

std::vector<complex> compute_moments(const LocalHamiltonian& h, const ProductState& x,
                                     const ProductState& y, std::size_t order) {
  auto s = moment_series(h, x, y, order);
  double f = 1.0;
  for (std::size_t m = 0; m <= order; ++m) {
    if (m > 0) f *= -static_cast<double>(m);
    s[m] *= f;
  }
  return s;
}

TruncatedSeries amplitude_series(const LocalHamiltonian& h, const ProductState& x,
                                 const ProductState& y, std::size_t order) {
  return TruncatedSeries(moment_series(h, x, y, order));
}

TruncatedSeries log_amplitude_series(const LocalHamiltonian& h, const ProductState& x,
                                     const ProductState& y, std::size_t order, double floor) {
  return series_log(amplitude_series(h, x, y, order), floor);
}

std::size_t truncation_order(std::size_t n_terms, double beta, double beta_star, double eps) {
  if (!(beta > 0.0) || !(eps > 0.0)) fail(ErrorCode::InvalidArgument, "beta and eps must be positive");
  if (!(beta < beta_star))
    fail(ErrorCode::NotApplicable, "beta >= beta_star: cluster expansion does not converge");
  const double r = beta / beta_star;
  const double v = std::log(static_cast<double>(n_terms) / (eps * (1.0 - r))) / std::log(1.0 / r);
  if (!(v < 1e15)) fail(ErrorCode::CapExceeded, "truncation order overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

double cluster_tail_bound(std::size_t n_terms, std::size_t degree_eff, double abs_beta, std::size_t order) {
  const double r = abs_beta / beta_star(degree_eff);
  if (!(r < 1.0)) fail(ErrorCode::NotApplicable, "cluster tail ratio is not below one");
  return static_cast<double>(n_terms) * std::pow(r, static_cast<double>(order + 1)) / (1.0 - r);
}

double exp_series_tail(double a, std::size_t order) {
  if (a < 0.0) fail(ErrorCode::InvalidArgument, "exp_series_tail needs a >= 0");
  if (a == 0.0) return 0.0;
  // term_m = a^m/m!, summed for m > order until the terms stop mattering.
  double log_term = 0.0;
  for (std::size_t m = 1; m <= order + 1; ++m) log_term += std::log(a) - std::log(static_cast<double>(m));
  double term = std::exp(log_term);
  double sum = 0.0;
  for (std::size_t m = order + 1; m < order + 100000; ++m) {
    sum += term;
    const double next = term * a / static_cast<double>(m + 1);
    if (next < sum * 1e-17 || next == 0.0) {
      // geometric majorant for what remains
      const double ratio = a / static_cast<double>(m + 2);
      if (ratio < 1.0) sum += next / (1.0 - ratio);
      break;
    }
    term = next;
  }
  return sum;
}

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Cluster: return "cluster";
    case Backend::HadamardMc: return "mc";
    case Backend::Continuation: return "continuation";
  }
  return "unknown";
}

Backend parse_backend(const std::string& name) {
  if (name == "exact") return Backend::Exact;
  if (name == "cluster") return Backend::Cluster;
  if (name == "mc" || name == "hadamard_mc") return Backend::HadamardMc;
  if (name == "continuation") return Backend::Continuation;
  fail(ErrorCode::InvalidArgument, "unknown backend '" + name + "'");
}

double cluster_beta_limit(const LocalHamiltonian& h) {
  const auto g = InteractionGraph::build(h);
  return beta_star(g.effective_degree()) / std::max(1.0, h.max_abs_coefficient());
}

namespace {

struct PairWork {
  std::size_t j, k;
  bool log_path;
  complex forward;   // <x_j|e^{-bH}|x_k>
  complex backward;  // <x_k|e^{-bH}|x_j>
  double err_forward = 0.0, err_backward = 0.0;
};

}  // namespace

PartitionEstimate estimate_partition(const LocalHamiltonian& h, double shift, complex beta,
                                     const SemiClassicalState& psi, double eps,
                                     const ClusterOptions& options) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (beta.real() < 0.0) fail(ErrorCode::InvalidArgument, "Re beta must be non-negative");
  if (psi.n_qubits() != h.n_qubits())
    fail(ErrorCode::InvalidArgument, "state and Hamiltonian have different qubit counts");

  PartitionEstimate est;
  est.backend = Backend::Cluster;
  if (beta == 0.0) {
    // <psi|psi> = 1 up to the state's normalisation tolerance.
    est.value = 1.0;
    est.additive_error_bound = std::abs(psi.norm_squared() - 1.0);
    return est;
  }

  const auto graph = InteractionGraph::build(h);
  const std::size_t d_eff = graph.effective_degree();
  const double lambda_max = std::max(1.0, h.max_abs_coefficient());
  const double beta_eff = std::abs(beta) * lambda_max;
  const double bstar = beta_star(d_eff);
  if (!(beta_eff < bstar * options.max_ratio))
    fail(ErrorCode::NotApplicable, "|beta| = " + std::to_string(std::abs(beta)) +
                                       " is outside the cluster regime (limit " +
                                       std::to_string(bstar * options.max_ratio / lambda_max) + ")");

  const auto comps = psi.components();
  const std::size_t r = comps.size();
  const std::size_t n_pairs = r * (r + 1) / 2;
  if (n_pairs > limits().max_component_pairs)
    fail(ErrorCode::CapExceeded, std::to_string(n_pairs) + " component pairs exceed the cap of " +
                                     std::to_string(limits().max_component_pairs));

  std::vector<PairWork> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j; k < r; ++k) {
      const bool same = std::abs(comps[j].state.overlap(comps[k].state)) >= 1.0 - 1e-12;
      pairs.push_back({j, k, same, 0.0, 0.0});
    }

  const double shift_mod = std::exp(beta.real() * shift);
  double weight = 0.0;  // sum_{j,k} |a_j||a_k|
  for (const auto& a : comps)
    for (const auto& b : comps) weight += std::abs(a.amplitude) * std::abs(b.amplitude);
  const double budget = eps / (shift_mod * weight);
  const double one_norm = h.coefficient_one_norm();
  const std::size_t n_terms = h.num_terms();

  const bool has_direct = std::any_of(pairs.begin(), pairs.end(), [](const PairWork& p) { return !p.log_path; });
  std::size_t order = truncation_order(n_terms, beta_eff, bstar, budget);
  while (has_direct && exp_series_tail(std::abs(beta) * one_norm, order) > budget &&
         order < static_cast<std::size_t>(limits().series_max_order))
    ++order;

  const complex beta_c = std::conj(beta);
  for (;;) {
    if (order > static_cast<std::size_t>(limits().series_max_order))
      fail(ErrorCode::CapExceeded, "series order " + std::to_string(order) + " exceeds the cap of " +
                                       std::to_string(limits().series_max_order));
    const double tau = cluster_tail_bound(n_terms, d_eff, beta_eff, order);
    const double direct_tail = has_direct ? exp_series_tail(std::abs(beta) * one_norm, order) : 0.0;

    parallel_for(pairs.size(), [&](std::size_t i) {
      auto& p = pairs[i];
      const auto& xj = comps[p.j].state;
      const auto& xk = comps[p.k].state;
      auto s = amplitude_series(h, xk, xj, order);  // <x_j|...|x_k>
      if (p.log_path) {
        const auto l = series_log(s);
        p.forward = std::exp(series_eval(l, beta));
        p.backward = std::conj(std::exp(series_eval(l, beta_c)));
        const double grow = std::expm1(tau);
        p.err_forward = std::abs(p.forward) * grow;
        p.err_backward = std::abs(p.backward) * grow;
      } else {
        p.forward = series_eval(s, beta);
        p.backward = std::conj(series_eval(s, beta_c));
        p.err_forward = p.err_backward = direct_tail;
      }
    });

    complex value = 0.0;
    double bound = 0.0;
    std::size_t log_pairs = 0, direct_pairs = 0;
    for (const auto& p : pairs) {
      const complex aj = comps[p.j].amplitude, ak = comps[p.k].amplitude;
      const double w = std::abs(aj) * std::abs(ak);
      if (p.j == p.k) {
        value += std::norm(aj) * p.forward;
        bound += w * p.err_forward;
      } else {
        value += std::conj(aj) * ak * p.forward + std::conj(ak) * aj * p.backward;
        bound += w * (p.err_forward + p.err_backward);
      }
      (p.log_path ? log_pairs : direct_pairs) += p.j == p.k ? 1 : 2;
    }
    const complex factor = std::exp(beta * shift);
    bound *= shift_mod;
    if (bound <= eps || !std::isfinite(bound)) {
      if (!std::isfinite(bound)) fail(ErrorCode::Domain, "partition error bound is not finite");
      est.value = value * factor;
      est.additive_error_bound = bound;
      est.order = order;
      est.log_pairs = log_pairs;
      est.direct_pairs = direct_pairs;
      return est;
    }
    order += std::max<std::size_t>(1, order / 4);
  }
}

}  // namespace rqite
