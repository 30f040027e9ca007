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
#include <cstdint>
#include <utility>
#include <vector>

#include "rqite/hamiltonian.hpp"

namespace rqite {

/// One vertex per Hamiltonian term; distinct terms are adjacent iff their
/// supports intersect.
class InteractionGraph {
 public:
  InteractionGraph() = default;

  static InteractionGraph build(const LocalHamiltonian& h);
  /// Graph given by an explicit edge list (used for combinatorial studies).
  static InteractionGraph from_edges(std::size_t n_vertices,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  bool adjacent(std::size_t a, std::size_t b) const;

  /// Maximum neighbour count, self excluded.
  std::size_t max_degree() const noexcept { return max_degree_; }
  /// max(max_degree, 1); used in every bound.
  std::size_t effective_degree() const noexcept { return max_degree_ > 0 ? max_degree_ : 1; }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t max_degree_ = 0;
};

/// 1 / (2 e^2 d (d + 1)) with d = max(degree, 1).
double beta_star(std::size_t degree);

/// 4^k 2^(Dk) k^(k/D) D^(2k); +inf on overflow.
double lattice_degree_bound(std::size_t k, std::size_t dimension);

/// Multiset of term indices, stored sorted with repetition.
struct Cluster {
  std::vector<std::size_t> terms;

  std::size_t size() const noexcept { return terms.size(); }
  friend bool operator==(const Cluster&, const Cluster&) = default;
  friend auto operator<=>(const Cluster&, const Cluster&) = default;
};

/// Connectivity of the multigraph induced by the cluster: copies of one term
/// are mutually adjacent, distinct terms follow the graph.
bool is_connected(const InteractionGraph& g, const Cluster& c);

/// Connected vertex subsets with at most `max_size` vertices, each sorted,
/// in lexicographic order.
std::vector<std::vector<std::size_t>> connected_subsets(const InteractionGraph& g, std::size_t max_size);

/// All connected clusters of size m in lexicographic order.
std::vector<Cluster> enumerate_connected_clusters(const InteractionGraph& g, std::size_t m);

/// |G_m| without materialising the clusters: each connected vertex set of
/// size s contributes C(m-1, s-1) multiplicity assignments.
double count_connected_clusters(const InteractionGraph& g, std::size_t m);

struct ClusterCountCheck {
  double count;
  double bound;
  bool ok;
};

/// Compares |G_m| with |S| (e d_eff)^m.
ClusterCountCheck cluster_count_check(const InteractionGraph& g, std::size_t m);

}  // namespace rqite
