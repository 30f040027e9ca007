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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rqite/error.hpp"
#include "rqite/exact_oracle.hpp"
#include "rqite/expansion.hpp"
#include "rqite/scan.hpp"

using namespace rqite;
using cd = std::complex<double>;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

SemiClassicalState plus1() { return SemiClassicalState::single(ProductState({{cd(kR), cd(kR)}})); }

LocalHamiltonian z() { return parse_hamiltonian("1 Z0").hamiltonian; }

RqiteConfig config(double gamma, double gap, double eps, double ea, double eb, Backend b) {
  RqiteConfig c;
  c.gamma = gamma;
  c.gap = gap;
  c.eps = eps;
  c.ea = ea;
  c.eb = eb;
  c.backend = b;
  return c;
}

bool same_trace(const RqiteResult& a, const RqiteResult& b) {
  if (a.trace.size() != b.trace.size() || a.e0_estimate != b.e0_estimate) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i)
    if (a.trace[i].residue != b.trace[i].residue || a.trace[i].d_beta != b.trace[i].d_beta) return false;
  return true;
}

}  // namespace

TEST_SUITE("rqite") {
  TEST_CASE("gap assumption") {
    CHECK(validate_gap_assumption(2.0, 0.1, kR));
    CHECK_FALSE(validate_gap_assumption(0.1, 0.1, kR));
    CHECK(validate_gap_assumption(1.0, 1.0, 1.0));
    CHECK_THROWS_AS(validate_gap_assumption(0.0, 0.1, 1.0), Error);
  }

  TEST_CASE("derived parameters") {
    const auto p = derive_parameters(2.0, 0.1, kR);
    CHECK(p.beta == doctest::Approx(std::log(20.0) / 2.0));
    CHECK(p.beta == doctest::Approx(1.49787).epsilon(1e-5));
    CHECK(p.t_max == doctest::Approx(25.465).epsilon(1e-4));
    CHECK(p.xi == doctest::Approx(0.087447).epsilon(1e-4));
    CHECK(p.gap_assumption_holds);
  }

  TEST_CASE("exact scan on a single spin") {
    const auto r = scan(z(), plus1(), config(kR, 2.0, 0.1, -2.0, 0.0, Backend::Exact));
    CHECK(r.e0_estimate >= -1.1);
    CHECK(r.e0_estimate <= -0.9);
    CHECK(r.e0_estimate >= -2.0);
    CHECK(r.trace.size() == r.terminated_at + 1);
    CHECK(r.e_max <= r.e0_estimate);
  }

  TEST_CASE("cluster scan on the normalised spin with relaxed eps") {
    const auto nh = normalize_hamiltonian(z(), NormalizeMode::Exact).hamiltonian;
    const double eps = min_cluster_eps(2.0, kR, cluster_beta_limit(nh));
    CHECK(eps > 1.9);
    const auto r = scan(nh, plus1(), config(kR, 2.0, eps, -2.0, 1.0, Backend::Cluster));
    CHECK(std::abs(r.e0_estimate - -1.0) <= eps);
    // Too small an eps puts 2 beta outside the cluster regime.
    try {
      scan(nh, plus1(), config(kR, 2.0, 0.1, -2.0, 0.0, Backend::Cluster));
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotApplicable);
    }
  }

  TEST_CASE("interval above the ground energy exhausts the scan") {
    try {
      scan(z(), plus1(), config(kR, 2.0, 0.1, 0.0, 1.0, Backend::Exact));
      FAIL("expected scan exhaustion");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ScanExhausted);
    }
  }

  TEST_CASE("end-to-end accuracy on random instances") {
    std::mt19937_64 rng(1);
    int runs = 0;
    for (int t = 0; t < 400 && runs < 20; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const auto h = oracle::random_chain(n, 8, rng);
      const auto psi = SemiClassicalState::single(oracle::random_product(n, rng));
      const auto s = spectrum(h, psi);
      const double eps = 0.05;
      const double gamma = std::sqrt(0.95 * s.p0);
      if (s.p0 < 0.2 || !validate_gap_assumption(s.gap, eps, gamma)) continue;
      ++runs;
      const auto r = scan(h, psi, config(gamma, s.gap, eps, s.e0 - 2.0, s.e0 + 1.0, Backend::Exact));
      // Grid points are accumulated in floating point.
      CHECK(std::abs(r.e0_estimate - s.e0) <= eps * (1 + 1e-9));
    }
    CHECK(runs >= 10);
  }

  TEST_CASE("mc scan started near the ground energy") {
    auto c = config(kR, 2.0, 0.2, -1.6, 0.0, Backend::HadamardMc);
    c.seed = 17;
    const auto r = scan(z(), plus1(), c);
    CHECK(std::abs(r.e0_estimate - -1.0) <= 0.2 * (1 + 1e-9));
    CHECK(r.samples_beta > 0);
    CHECK(r.samples_2beta > 0);
    CHECK(same_trace(r, scan(z(), plus1(), c)));
    c.seed = 18;
    CHECK_FALSE(same_trace(r, scan(z(), plus1(), c)));
  }

  TEST_CASE("determinism for the deterministic backends") {
    const auto nh = normalize_hamiltonian(z(), NormalizeMode::Exact).hamiltonian;
    const double eps = min_cluster_eps(2.0, kR, cluster_beta_limit(nh));
    for (auto b : {Backend::Exact, Backend::Cluster}) {
      const auto c = config(kR, 2.0, b == Backend::Exact ? 0.1 : eps, -2.0, 1.0, b);
      CHECK(same_trace(scan(nh, plus1(), c), scan(nh, plus1(), c)));
    }
  }

  TEST_CASE("exact and cluster backends stop at the same grid point") {
    std::mt19937_64 rng(2);
    int compared = 0;
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const auto h = normalize_hamiltonian(oracle::random_chain(n, 6, rng), NormalizeMode::Exact).hamiltonian;
      const auto psi = SemiClassicalState::single(oracle::random_product(n, rng));
      const auto s = spectrum(h, psi);
      if (s.p0 < 0.3 || s.gap < 0.2) continue;
      const double gamma = std::sqrt(0.9 * s.p0);
      const double eps = min_cluster_eps(s.gap, gamma, cluster_beta_limit(h));
      if (!(gamma * gamma * eps < 1.0)) continue;
      const auto cfg_c = config(gamma, s.gap, eps, -1.5, 1.5, Backend::Cluster);
      auto cfg_e = cfg_c;
      cfg_e.backend = Backend::Exact;
      RqiteResult ce, cc;
      try {
        ce = scan(h, psi, cfg_e);
        cc = scan(h, psi, cfg_c);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ScanExhausted);
        continue;
      }
      double worst = 0.0;
      for (const auto& p : cc.trace) worst = std::max(worst, p.error_bound);
      if (worst >= cc.params.xi / 4.0) continue;
      CHECK(ce.terminated_at == cc.terminated_at);
      ++compared;
    }
    CHECK(compared >= 3);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(scan(z(), plus1(), config(1.5, 2.0, 0.1, -2.0, 0.0, Backend::Exact)), Error);
    CHECK_THROWS_AS(scan(z(), plus1(), config(kR, 2.0, 0.1, 0.0, -2.0, Backend::Exact)), Error);
    CHECK_THROWS_AS(scan(z(), plus1(), config(kR, 2.0, 3.0, -2.0, 0.0, Backend::Exact)), Error);
  }
}
