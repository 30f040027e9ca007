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
#include <string>
#include <vector>

#include "doctest.h"
#include "rqite/error.hpp"
#include "rqite/limits.hpp"
#include "rqite/series.hpp"

using namespace rqite;
using cd = std::complex<double>;

namespace {

TruncatedSeries real_series(std::vector<double> c) {
  std::vector<cd> z(c.begin(), c.end());
  return TruncatedSeries(z);
}

void check_coeffs(const TruncatedSeries& s, const std::vector<double>& want, double tol = 1e-14) {
  REQUIRE(s.order() + 1 == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(s[i] - want[i]) <= tol);
}

TruncatedSeries random_series(std::mt19937_64& rng, std::size_t order, double c0_min) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedSeries s(order);
  for (std::size_t i = 0; i <= order; ++i) s[i] = cd(u(rng), u(rng));
  const double r = std::abs(s[0]);
  if (r < c0_min) s[0] = r > 0 ? s[0] * (c0_min / r) : cd(c0_min);
  return s;
}

// Plain polynomial product truncated at `order`.
std::vector<cd> poly_mul(const std::vector<cd>& a, const std::vector<cd>& b, std::size_t order) {
  std::vector<cd> out(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cd> poly_compose(const std::vector<cd>& outer, const std::vector<cd>& inner, std::size_t order) {
  std::vector<cd> out(order + 1, 0.0), power(order + 1, 0.0);
  power[0] = 1.0;
  for (std::size_t k = 0; k < outer.size(); ++k) {
    for (std::size_t i = 0; i <= order; ++i) out[i] += outer[k] * power[i];
    power = poly_mul(power, inner, order);
  }
  return out;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("log examples") {
    check_coeffs(series_log(real_series({1, 1, 0, 0})), {0, 1, -0.5, 1.0 / 3});
    check_coeffs(series_log(real_series({1, 0, 0})), {0, 0, 0});
    check_coeffs(series_log(real_series({1, 0, 0.5, 0, 1.0 / 24})), {0, 0, 0.5, 0, -1.0 / 12});
  }

  TEST_CASE("log of a non-unit constant uses the principal branch") {
    const auto s = series_log(real_series({-2, 1}));
    CHECK(std::abs(s[0] - std::log(cd(-2))) < 1e-14);
    CHECK(std::abs(s[1] - (-0.5)) < 1e-14);
  }

  TEST_CASE("log refuses a vanishing constant term") {
    try {
      series_log(real_series({1e-13, 1}));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateOverlap);
    }
    CHECK_NOTHROW(series_log(real_series({1e-13, 1}), 1e-14));
  }

  TEST_CASE("exp examples") {
    check_coeffs(series_exp(real_series({0, 1, 0, 0})), {1, 1, 0.5, 1.0 / 6});
    check_coeffs(series_exp(real_series({0, 0, 0, 0})), {1, 0, 0, 0});
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
      auto s = random_series(rng, 8, 0.0);
      s[0] = 1.0 + 0.49 * s[0] / std::max(1.0, std::abs(s[0]));
      const auto back = series_exp(series_log(s));
      for (std::size_t i = 0; i <= 8; ++i) CHECK(std::abs(back[i] - s[i]) < 1e-12);
    }
  }

  TEST_CASE("exp and log are mutually inverse") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
      const std::size_t m = 1 + rng() % 12;
      const auto s = random_series(rng, m, 0.5);
      const auto a = series_exp(series_log(s));
      for (std::size_t i = 0; i <= m; ++i) CHECK(std::abs(a[i] - s[i]) < 1e-10);
      auto small = random_series(rng, m, 0.0);
      small[0] = cd(small[0].real(), 0.5 * small[0].imag());  // keep the principal branch
      const auto b = series_log(series_exp(small));
      for (std::size_t i = 0; i <= m; ++i) CHECK(std::abs(b[i] - small[i]) < 1e-10);
    }
  }

  TEST_CASE("compose examples") {
    std::mt19937_64 rng(3);
    auto inner = random_series(rng, 6, 0.0);
    inner[0] = 0.0;
    const auto id = series_compose(TruncatedSeries::identity(6), inner);
    for (std::size_t i = 0; i <= 6; ++i) CHECK(std::abs(id[i] - inner[i]) < 1e-15);

    check_coeffs(series_compose(real_series({0, 0, 1, 0, 0}), real_series({0, 1, 1, 0, 0})), {0, 0, 1, 2, 1});

    try {
      series_compose(real_series({0, 1}), real_series({1, 1}));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }

  TEST_CASE("compose matches brute-force polynomial expansion") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
      const std::size_t m = 1 + rng() % 8;
      const auto outer = random_series(rng, m, 0.0);
      auto inner = random_series(rng, m, 0.0);
      auto inner2 = random_series(rng, m, 0.0);
      inner[0] = inner2[0] = 0.0;
      const auto got = series_compose(outer, inner);
      const auto want = poly_compose(outer.coefficients(), inner.coefficients(), m);
      for (std::size_t i = 0; i <= m; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);

      // (a o b) o c == a o (b o c)
      const auto lhs = series_compose(series_compose(outer, inner), inner2);
      const auto rhs = series_compose(outer, series_compose(inner, inner2));
      for (std::size_t i = 0; i <= m; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-11);

      // Distributes over addition in the outer argument.
      const auto other = random_series(rng, m, 0.0);
      const auto sum = series_compose(outer + other, inner);
      const auto parts = series_compose(outer, inner) + series_compose(other, inner);
      for (std::size_t i = 0; i <= m; ++i) CHECK(std::abs(sum[i] - parts[i]) < 1e-12);
    }
  }

  TEST_CASE("eval") {
    CHECK(series_eval(real_series({1, 1, 1}), 0.0) == cd(1.0));
    TruncatedSeries log1p(30);
    for (int k = 1; k <= 30; ++k) log1p[k] = (k % 2 ? 1.0 : -1.0) / k;
    CHECK(std::abs(series_eval(log1p, 0.5) - std::log(1.5)) < 1e-9);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
      const auto s = random_series(rng, 1 + rng() % 15, 0.0);
      const cd z(std::uniform_real_distribution<double>(-1, 1)(rng), std::uniform_real_distribution<double>(-1, 1)(rng));
      cd naive = 0.0;
      for (std::size_t i = 0; i <= s.order(); ++i) naive += s[i] * std::pow(z, static_cast<int>(i));
      CHECK(std::abs(series_eval(s, z) - naive) < 1e-12);
    }
  }

  TEST_CASE("mixed orders truncate to the smaller order and warn") {
    std::vector<std::string> seen;
    set_warning_handler([&](const std::string& m) { seen.push_back(m); });
    const auto s = real_series({1, 2, 3}) * real_series({1, 1});
    set_warning_handler(nullptr);
    CHECK(s.order() == 1);
    check_coeffs(s, {1, 3});
    CHECK(seen.size() == 1);
    CHECK_THROWS_AS(real_series({1, 2}).truncated(3), Error);
  }
}
