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

#include "rqite/interaction_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {

InteractionGraph InteractionGraph::build(const LocalHamiltonian& h) {
  const auto terms = h.terms();
  const std::size_t n = terms.size();
  // qubit -> terms touching it
  std::vector<std::vector<std::size_t>> on_qubit(h.n_qubits());
  for (std::size_t t = 0; t < n; ++t)
    for (auto q : terms[t].op.support()) on_qubit[q].push_back(t);

  InteractionGraph g;
  g.adj_.resize(n);
  for (const auto& list : on_qubit)
    for (auto a : list)
      for (auto b : list)
        if (a != b) g.adj_[a].push_back(b);
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.max_degree_ = std::max(g.max_degree_, a.size());
  }
  return g;
}

InteractionGraph InteractionGraph::from_edges(
    std::size_t n_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  InteractionGraph g;
  g.adj_.resize(n_vertices);
  for (auto [a, b] : edges) {
    if (a >= n_vertices || b >= n_vertices) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (a == b) continue;
    g.adj_[a].push_back(b);
    g.adj_[b].push_back(a);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.max_degree_ = std::max(g.max_degree_, a.size());
  }
  return g;
}

bool InteractionGraph::adjacent(std::size_t a, std::size_t b) const {
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<std::pair<std::size_t, std::size_t>> InteractionGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < adj_.size(); ++a)
    for (auto b : adj_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

double beta_star(std::size_t degree) {
  const double d = static_cast<double>(std::max<std::size_t>(degree, 1));
  const double e2 = std::numbers::e * std::numbers::e;
  return 1.0 / (2.0 * e2 * d * (d + 1.0));
}

double lattice_degree_bound(std::size_t k, std::size_t dimension) {
  if (k == 0 || dimension == 0) fail(ErrorCode::InvalidArgument, "k and D must be positive");
  const double kk = static_cast<double>(k), dd = static_cast<double>(dimension);
  return std::pow(4.0, kk) * std::pow(2.0, dd * kk) * std::pow(kk, kk / dd) * std::pow(dd, 2.0 * kk);
}

bool is_connected(const InteractionGraph& g, const Cluster& c) {
  if (c.terms.empty()) return false;
  std::vector<std::size_t> v = c.terms;
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<char> seen(v.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!seen[j] && g.adjacent(v[i], v[j])) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
  }
  return reached == v.size();
}

namespace {

// ESU: every connected subset is produced exactly once, from its smallest
// vertex.
void extend(const InteractionGraph& g, std::vector<std::size_t>& sub, std::vector<std::size_t> ext,
            std::size_t root, std::size_t max_size, std::vector<char>& in_sub_or_nbr,
            std::vector<std::vector<std::size_t>>& out, std::size_t cap) {
  auto sorted = sub;
  std::sort(sorted.begin(), sorted.end());
  out.push_back(std::move(sorted));
  if (out.size() > cap)
    fail(ErrorCode::CapExceeded, "connected subset count exceeds cluster cap " + std::to_string(cap));
  if (sub.size() == max_size) return;
  while (!ext.empty()) {
    const std::size_t w = ext.back();
    ext.pop_back();
    // exclusive neighbours of w: not in sub, not adjacent to sub
    std::vector<std::size_t> added;
    auto next_ext = ext;
    for (auto u : g.neighbors(w))
      if (u > root && !in_sub_or_nbr[u]) {
        next_ext.push_back(u);
        added.push_back(u);
      }
    for (auto u : added) in_sub_or_nbr[u] = 1;
    const bool w_marked = in_sub_or_nbr[w];
    in_sub_or_nbr[w] = 1;
    sub.push_back(w);
    extend(g, sub, std::move(next_ext), root, max_size, in_sub_or_nbr, out, cap);
    sub.pop_back();
    in_sub_or_nbr[w] = w_marked;
    for (auto u : added) in_sub_or_nbr[u] = 0;
  }
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace

std::vector<std::vector<std::size_t>> connected_subsets(const InteractionGraph& g, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  if (max_size == 0) return out;
  const std::size_t n = g.size();
  const std::size_t cap = limits().cluster_max_count;
  std::vector<char> marked(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    // marked = sub plus its neighbourhood; ESU's exclusivity test
    marked[v] = 1;
    std::vector<std::size_t> ext;
    for (auto u : g.neighbors(v)) {
      marked[u] = 1;
      if (u > v) ext.push_back(u);
    }
    std::vector<std::size_t> sub{v};
    extend(g, sub, ext, v, max_size, marked, out, cap);
    marked[v] = 0;
    for (auto u : g.neighbors(v)) marked[u] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Appends all clusters with vertex set `verts` and total size m
// (multiplicities >= 1).
void expand_multiplicities(const std::vector<std::size_t>& verts, std::size_t m, std::size_t i,
                           std::vector<std::size_t>& cur, std::vector<Cluster>& out) {
  if (i + 1 == verts.size()) {
    const std::size_t rest = m - cur.size();
    const std::size_t before = cur.size();
    cur.insert(cur.end(), rest, verts[i]);
    out.push_back({cur});
    cur.resize(before);
    return;
  }
  const std::size_t remaining_vertices = verts.size() - i - 1;
  const std::size_t max_here = m - cur.size() - remaining_vertices;
  for (std::size_t k = 1; k <= max_here; ++k) {
    cur.insert(cur.end(), k, verts[i]);
    expand_multiplicities(verts, m, i + 1, cur, out);
    cur.resize(cur.size() - k);
  }
}

}  // namespace

std::vector<Cluster> enumerate_connected_clusters(const InteractionGraph& g, std::size_t m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "cluster size must be at least 1");
  const double total = count_connected_clusters(g, m);
  const std::size_t cap = limits().cluster_max_count;
  if (total > static_cast<double>(cap))
    fail(ErrorCode::CapExceeded, "|G_" + std::to_string(m) + "| = " + std::to_string(total) +
                                     " exceeds cluster cap " + std::to_string(cap));
  std::vector<Cluster> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> cur;
  for (const auto& verts : connected_subsets(g, m)) expand_multiplicities(verts, m, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

double count_connected_clusters(const InteractionGraph& g, std::size_t m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "cluster size must be at least 1");
  double count = 0.0;
  for (const auto& s : connected_subsets(g, m)) count += binomial(m - 1, s.size() - 1);
  return count;
}

ClusterCountCheck cluster_count_check(const InteractionGraph& g, std::size_t m) {
  const double count = count_connected_clusters(g, m);
  const double d = static_cast<double>(g.effective_degree());
  const double bound = static_cast<double>(g.size()) * std::pow(std::numbers::e * d, static_cast<double>(m));
  return {count, bound, count <= bound};
}

}  // namespace rqite
