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
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rqite/error.hpp"
#include "rqite/exact_oracle.hpp"
#include "rqite/expansion.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"

using namespace rqite;
using cd = std::complex<double>;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

ProductState plus1() { return ProductState({{cd(kR), cd(kR)}}); }

LocalHamiltonian ham(const char* text) { return parse_hamiltonian(text).hamiltonian; }

// Taylor coefficients of f around 0 from samples on a circle of radius r.
std::vector<cd> cauchy_coeffs(const std::function<cd(cd)>& f, std::size_t order, double r, std::size_t points = 64) {
  std::vector<cd> out(order + 1, 0.0);
  for (std::size_t j = 0; j < points; ++j) {
    const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(points);
    const cd z = std::polar(r, th);
    const cd v = f(z);
    for (std::size_t k = 0; k <= order; ++k) out[k] += v * std::polar(1.0, -th * static_cast<double>(k));
  }
  for (std::size_t k = 0; k <= order; ++k) out[k] /= static_cast<double>(points) * std::pow(r, static_cast<double>(k));
  return out;
}

using Monomial = std::vector<int>;  // exponent per term
using Poly = std::map<Monomial, cd>;

Poly poly_mul(const Poly& a, const Poly& b, int max_degree) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      int deg = 0;
      for (std::size_t i = 0; i < m.size(); ++i) deg += (m[i] = ma[i] + mb[i]);
      if (deg <= max_degree) out[m] += ca * cb;
    }
  return out;
}

}  // namespace

TEST_SUITE("expansion") {
  TEST_CASE("moment examples") {
    const auto z = ham("1 Z0");
    const auto mp = compute_moments(z, plus1(), plus1(), 6);
    for (std::size_t m = 0; m <= 6; ++m) CHECK(std::abs(mp[m] - (m % 2 ? 0.0 : 1.0)) < 1e-14);
    const auto m0 = compute_moments(z, ProductState::zeros(1), ProductState::zeros(1), 5);
    for (const auto& v : m0) CHECK(std::abs(v - 1.0) < 1e-14);

    const auto h = ham("1 Z0 Z1\n1 X0");
    const auto got = compute_moments(h, ProductState::zeros(2), ProductState::zeros(2), 4);
    const oracle::Mat hd = oracle::dense(h);
    const oracle::Vec v = oracle::vec(ProductState::zeros(2));
    oracle::Mat p = oracle::Mat::Identity(4, 4);
    for (std::size_t m = 0; m <= 4; ++m) {
      CHECK(std::abs(got[m] - v.dot(p * v)) < 1e-10);
      p = p * hd;
    }
  }

  TEST_CASE("moments match dense powers on random product pairs") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng() % 5;
      const auto h = oracle::random_chain(n, 9, rng);
      const auto x = oracle::random_product(n, rng);
      const auto y = rng() % 3 ? oracle::random_product(n, rng) : x;
      const auto got = compute_moments(h, x, y, 7);
      const oracle::Mat hd = oracle::dense(h);
      oracle::Vec w = oracle::vec(x);
      const oracle::Vec yv = oracle::vec(y);
      for (std::size_t m = 0; m <= 7; ++m) {
        const cd want = yv.dot(w);
        CHECK(std::abs(got[m] - want) < 1e-10 * std::max(1.0, std::abs(want)));
        w = hd * w;
      }
      if (&x == &y || std::abs(x.overlap(y) - 1.0) < 1e-15)
        for (const auto& mm : got) CHECK(std::abs(mm.imag()) < 1e-10);
    }
  }

  TEST_CASE("truncation order") {
    const double bs = beta_star(1);
    CHECK(truncation_order(2, 0.5 * bs, bs, 1e-3) == 12);
    CHECK(truncation_order(2, 0.5 * bs, bs, 0.1) == 6);
    CHECK(truncation_order(2, 0.999 * bs, bs, 0.1) > 1000);
    CHECK_THROWS_AS(truncation_order(2, bs, bs, 0.1), Error);
  }

  TEST_CASE("cluster tail bound") {
    const double bs = beta_star(1);
    CHECK(cluster_tail_bound(2, 1, 0.5 * bs, 12) == doctest::Approx(4.0 * std::pow(2.0, -13)));
    CHECK(cluster_tail_bound(2, 1, 0.5 * bs, 12) == doctest::Approx(4.88e-4).epsilon(1e-3));
    const double r = 0.3;
    CHECK(cluster_tail_bound(5, 1, r * bs, 0) == doctest::Approx(5 * r / (1 - r)));
    double prev = 1e300;
    for (std::size_t m = 0; m < 30; ++m) {
      const double b = cluster_tail_bound(3, 2, 0.7 * beta_star(2), m);
      CHECK(b < prev);
      prev = b;
    }
  }

  TEST_CASE("log amplitude examples") {
    const auto s = log_amplitude_series(ham("1 Z0"), plus1(), plus1(), 4);
    const std::vector<double> logcosh{0, 0, 0.5, 0, -1.0 / 12};
    for (std::size_t i = 0; i <= 4; ++i) CHECK(std::abs(s[i] - logcosh[i]) < 1e-14);
    const auto e = log_amplitude_series(ham("1 Z0"), ProductState::zeros(1), ProductState::zeros(1), 3);
    const std::vector<double> lin{0, -1, 0, 0};
    for (std::size_t i = 0; i <= 3; ++i) CHECK(std::abs(e[i] - lin[i]) < 1e-14);
    CHECK_THROWS_AS(log_amplitude_series(ham("1 X0"), ProductState::zeros(1), ProductState::basis(1, 1), 3), Error);
  }

  TEST_CASE("log amplitude coefficients match the dense exponential") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
      const auto h = oracle::random_chain(3, 5, rng);
      const auto got = log_amplitude_series(h, ProductState::zeros(3), ProductState::zeros(3), 6);
      const oracle::Mat hd = oracle::dense(h);
      const oracle::Vec v = oracle::vec(ProductState::zeros(3));
      const auto want = cauchy_coeffs([&](cd b) { return std::log(oracle::partition(hd, v, b)); }, 6, 0.1);
      for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-6);
    }
  }

  TEST_CASE("log coefficients are sums over connected clusters") {
    // Multivariate expansion in the coefficients: each monomial of degree m
    // is a cluster; its log coefficient must vanish unless it is connected.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const auto h = oracle::random_chain(n, 3, rng);
      const std::size_t s = h.num_terms();
      const auto g = InteractionGraph::build(h);
      const auto x = rng() % 2 ? ProductState::zeros(n) : oracle::random_product(n, rng);
      const oracle::Vec xv = oracle::vec(x);
      std::vector<oracle::Mat> ops;
      for (const auto& term : h.terms()) ops.push_back(oracle::dense(term.op));

      Poly u;  // <x|e^{-H}|x> - 1 with formal coefficients
      for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& ms : oracle::multisets(s, m)) {
          auto order = ms;
          cd sum = 0.0;
          do {
            oracle::Vec w = xv;
            for (auto it = order.rbegin(); it != order.rend(); ++it) w = ops[*it] * w;
            sum += xv.dot(w);
          } while (std::next_permutation(order.begin(), order.end()));
          Monomial mono(s, 0);
          for (auto i : ms) ++mono[i];
          u[mono] = sum * std::pow(-1.0, static_cast<double>(m)) / std::tgamma(static_cast<double>(m) + 1.0);
        }
      Poly log = u, power = u;
      for (int k = 2; k <= 3; ++k) {
        power = poly_mul(power, u, 3);
        for (const auto& [mono, c] : power) log[mono] += c * (k % 2 ? 1.0 : -1.0) / static_cast<double>(k);
      }

      const auto series = log_amplitude_series(h, x, x, 3);
      std::vector<cd> by_order(4, 0.0);
      for (const auto& [mono, c] : log) {
        std::vector<std::size_t> ms;
        for (std::size_t i = 0; i < s; ++i)
          for (int r = 0; r < mono[i]; ++r) ms.push_back(i);
        const bool connected = oracle::multiset_connected(ms, [&](std::size_t a, std::size_t b) { return g.adjacent(a, b); });
        if (!connected) CHECK(std::abs(c) < 1e-12);
        cd weight = c;
        for (std::size_t i = 0; i < s; ++i) weight *= std::pow(h.terms()[i].coefficient, mono[i]);
        by_order[ms.size()] += weight;
      }
      for (std::size_t m = 1; m <= 3; ++m) CHECK(std::abs(series[m] - by_order[m]) < 1e-12);
    }
  }

  TEST_CASE("partition examples") {
    const auto z = ham("1 Z0");
    const auto psi = SemiClassicalState::single(plus1());
    CHECK(std::abs(exact_partition(z, -1.0, 1.0, psi) - 0.5 * (1 + std::exp(-2.0))) < 1e-12);
    // beta = 1 is far outside the convergent regime of the expansion.
    try {
      estimate_partition(z, -1.0, 1.0, psi, 1e-3);
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotApplicable);
    }
    const double b = 0.9 * cluster_beta_limit(z);
    const auto e = estimate_partition(z, -1.0, b, psi, 1e-6);
    CHECK(std::abs(e.value - 0.5 * (1 + std::exp(-2 * b))) <= e.additive_error_bound + 1e-15);
    CHECK(e.additive_error_bound <= 1e-6);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
      const auto h = oracle::random_chain(3, 5, rng);
      const auto s = SemiClassicalState::single(oracle::random_product(3, rng));
      const auto zero = estimate_partition(h, 0.3, 0.0, s, 1e-3);
      CHECK(zero.value == cd(1.0));
      CHECK(zero.additive_error_bound <= 1e-10);
    }

    const auto h2 = ham("1 Z0 Z1\n0.3 X0");
    const auto bell = SemiClassicalState({{cd(kR), ProductState::basis(2, 0)}, {cd(kR), ProductState::basis(2, 3)}});
    const double beta = 0.5 * beta_star(1);
    const auto est = estimate_partition(h2, 0.0, beta, bell, 1e-3);
    const cd want = oracle::partition(oracle::dense(h2), oracle::vec(bell), beta);
    CHECK(std::abs(est.value - want) <= 1e-3);
    CHECK(std::abs(est.value - want) <= est.additive_error_bound);
    CHECK(est.direct_pairs == 2);
    CHECK(est.log_pairs == 2);
  }

  TEST_CASE("error bound honesty on random instances") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 6;
      const auto h = oracle::random_chain(n, 8, rng);
      std::vector<SemiClassicalState::Component> comps;
      const std::size_t r = 1 + rng() % 3;
      for (std::size_t j = 0; j < r; ++j)
        comps.push_back({cd(u(rng) + 0.1, u(rng) - 0.5), rng() % 2 ? ProductState::basis(n, rng() % (1u << n))
                                                                  : oracle::random_product(n, rng)});
      const auto psi = SemiClassicalState::normalized(comps);
      const double frac = 0.05 + 0.85 * u(rng);
      const cd beta = std::polar(frac * cluster_beta_limit(h), (u(rng) - 0.5) * (rng() % 2 ? 3.0 : 0.0));
      const double shift = -h.coefficient_one_norm() * u(rng);
      const auto est = estimate_partition(h, shift, beta, psi, 1e-3);
      const cd want = oracle::partition(oracle::dense(h), oracle::vec(psi), beta, shift);
      if (std::abs(est.value - want) > est.additive_error_bound + 1e-13) ++violations;
      if (beta.imag() == 0.0) CHECK(std::abs(est.value.imag()) < 1e-9);
    }
    CHECK(violations == 0);
  }

  TEST_CASE("backend names round trip") {
    for (auto b : {Backend::Exact, Backend::Cluster, Backend::HadamardMc, Backend::Continuation})
      CHECK(parse_backend(backend_name(b)) == b);
    CHECK_THROWS_AS(parse_backend("quantum"), Error);
  }

  TEST_CASE("sparse cap") {
    const auto h = ham("1 X0\n1 X1\n1 X2\n1 X3");
    Limits l = limits();
    const Limits saved = l;
    l.sparse_max_entries = 4;
    set_limits(l);
    CHECK_THROWS_AS(compute_moments(h, ProductState::zeros(4), ProductState::zeros(4), 4), Error);
    set_limits(saved);
  }
}
