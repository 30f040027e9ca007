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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rqite/error.hpp"
#include "rqite/hamiltonian.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"

using namespace rqite;

namespace {

InteractionGraph graph_of(const char* text) { return InteractionGraph::build(parse_hamiltonian(text).hamiltonian); }

std::vector<std::vector<std::size_t>> brute_force(const InteractionGraph& g, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& ms : oracle::multisets(g.size(), m))
    if (oracle::multiset_connected(ms, [&](std::size_t a, std::size_t b) { return g.adjacent(a, b); }))
      out.push_back(ms);
  return out;
}

std::vector<std::vector<std::size_t>> as_lists(const std::vector<Cluster>& cs) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : cs) out.push_back(c.terms);
  std::sort(out.begin(), out.end());
  return out;
}

InteractionGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::bernoulli_distribution coin(p);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return InteractionGraph::from_edges(n, edges);
}

}  // namespace

TEST_SUITE("interaction_graph") {
  TEST_CASE("build examples") {
    const auto a = graph_of("1 Z0 Z1\n1 Z1 Z2");
    CHECK(a.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(a.max_degree() == 1);

    const auto b = graph_of("1 Z0 Z1\n1 Z2 Z3");
    CHECK(b.edges().empty());
    CHECK(b.max_degree() == 0);
    CHECK(b.effective_degree() == 1);

    const auto c = graph_of("1 X0 X1\n1 Y0 Y1\n1 Z1 Z2");
    CHECK(c.max_degree() == 2);
  }

  TEST_CASE("edges follow support intersection") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
      const auto h = oracle::random_chain(3 + rng() % 6, 12, rng);
      const auto g = InteractionGraph::build(h);
      std::size_t degree = 0;
      for (std::size_t a = 0; a < h.num_terms(); ++a) {
        std::size_t deg = 0;
        for (std::size_t b = 0; b < h.num_terms(); ++b) {
          if (a == b) continue;
          const bool overlap = oracle::supports_overlap(h.terms()[a].op, h.terms()[b].op);
          CHECK(g.adjacent(a, b) == overlap);
          deg += overlap;
        }
        degree = std::max(degree, deg);
      }
      CHECK(g.max_degree() == degree);
    }
  }

  TEST_CASE("beta star") {
    CHECK(beta_star(1) == doctest::Approx(1.0 / (4 * std::exp(2.0))));
    CHECK(beta_star(1) == doctest::Approx(0.033834).epsilon(1e-5));
    CHECK(beta_star(2) == doctest::Approx(0.011278).epsilon(1e-4));
    CHECK(beta_star(0) == beta_star(1));
  }

  TEST_CASE("lattice degree bound") {
    CHECK(lattice_degree_bound(1, 1) == doctest::Approx(8.0));
    CHECK(lattice_degree_bound(2, 1) == doctest::Approx(256.0));
    std::vector<Term> terms;
    for (std::uint32_t q = 0; q + 1 < 10; ++q) terms.push_back({1.0, PauliString(10, {{q, Pauli::Z}, {q + 1, Pauli::Z}})});
    const auto g = InteractionGraph::build(LocalHamiltonian(10, terms));
    CHECK(g.max_degree() == 2);
    CHECK(g.max_degree() <= lattice_degree_bound(2, 1));
    CHECK(std::isinf(lattice_degree_bound(400, 3)));
  }

  TEST_CASE("enumeration examples") {
    const auto overlap = InteractionGraph::from_edges(2, {{0, 1}});
    CHECK(as_lists(enumerate_connected_clusters(overlap, 2)) ==
          std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}, {1, 1}});
    const auto disjoint = InteractionGraph::from_edges(2, {});
    CHECK(as_lists(enumerate_connected_clusters(disjoint, 2)) == std::vector<std::vector<std::size_t>>{{0, 0}, {1, 1}});
    std::mt19937_64 rng(2);
    const auto g = random_graph(rng, 7, 0.4);
    CHECK(enumerate_connected_clusters(g, 1).size() == 7);
    CHECK_THROWS_AS(enumerate_connected_clusters(g, 0), Error);
  }

  TEST_CASE("enumeration equals brute force") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
      const auto g = random_graph(rng, 1 + rng() % 6, 0.45);
      for (std::size_t m = 1; m <= 4; ++m) {
        const auto got = enumerate_connected_clusters(g, m);
        CHECK(as_lists(got) == brute_force(g, m));
        CHECK(count_connected_clusters(g, m) == doctest::Approx(static_cast<double>(got.size())));
        // Canonical order and no duplicates.
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
        for (const auto& c : got) CHECK(is_connected(g, c));
      }
    }
  }

  TEST_CASE("every connected cluster has a connected sub-multiset one smaller") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
      const auto g = random_graph(rng, 2 + rng() % 5, 0.5);
      for (std::size_t m = 2; m <= 4; ++m) {
        const auto smaller = enumerate_connected_clusters(g, m - 1);
        const std::set<Cluster> known(smaller.begin(), smaller.end());
        for (const auto& c : enumerate_connected_clusters(g, m)) {
          bool found = false;
          for (std::size_t drop = 0; drop < c.size() && !found; ++drop) {
            Cluster sub = c;
            sub.terms.erase(sub.terms.begin() + static_cast<std::ptrdiff_t>(drop));
            found = known.count(sub) > 0;
          }
          CHECK(found);
        }
      }
    }
  }

  TEST_CASE("count check") {
    const auto overlap = cluster_count_check(InteractionGraph::from_edges(2, {{0, 1}}), 2);
    CHECK(overlap.count == 3);
    CHECK(overlap.bound == doctest::Approx(2 * std::exp(2.0)));
    CHECK(overlap.ok);
    const auto disjoint = cluster_count_check(InteractionGraph::from_edges(2, {}), 2);
    CHECK(disjoint.count == 2);
    CHECK(disjoint.ok);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 120; ++t) {
      const auto h = oracle::random_chain(2 + rng() % 6, 8, rng);
      const auto g = InteractionGraph::build(h);
      for (std::size_t m = 1; m <= 5; ++m) {
        const auto c = cluster_count_check(g, m);
        CHECK(c.ok);
        CHECK(c.count <= c.bound);
        if (m == 1) CHECK(c.count == g.size());
      }
    }
  }

  TEST_CASE("cluster cap") {
    std::mt19937_64 rng(6);
    const auto g = random_graph(rng, 8, 0.9);
    Limits l = limits();
    const Limits saved = l;
    l.cluster_max_count = 10;
    set_limits(l);
    try {
      enumerate_connected_clusters(g, 3);
      FAIL("expected cap error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CapExceeded);
    }
    set_limits(saved);
  }
}
