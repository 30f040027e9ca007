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

#include "rqite/series.hpp"

#include <algorithm>
#include <cmath>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {

namespace {

std::size_t common_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order())
    warn("series of orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()) +
         " combined; truncating to " + std::to_string(std::min(a.order(), b.order())));
  return std::min(a.order(), b.order());
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<complex> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) fail(ErrorCode::InvalidArgument, "series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  if (order > this->order()) fail(ErrorCode::InvalidArgument, "cannot extend a truncated series");
  return TruncatedSeries(std::vector<complex>(c_.begin(), c_.begin() + order + 1));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r(common_order(a, b));
  for (std::size_t i = 0; i <= r.order(); ++i) r[i] = a[i] + b[i];
  return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r(common_order(a, b));
  for (std::size_t i = 0; i <= r.order(); ++i) r[i] = a[i] - b[i];
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r(common_order(a, b));
  const std::size_t m = r.order();
  for (std::size_t i = 0; i <= m; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; i + j <= m; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

TruncatedSeries operator*(std::complex<double> s, const TruncatedSeries& a) {
  TruncatedSeries r = a;
  for (std::size_t i = 0; i <= r.order(); ++i) r[i] *= s;
  return r;
}

TruncatedSeries series_log(const TruncatedSeries& s, double floor) {
  const auto c0 = s[0];
  if (!(std::abs(c0) >= floor))
    fail(ErrorCode::DegenerateOverlap, "series_log: constant term vanishes (|c0| = " +
                                           std::to_string(std::abs(c0)) + ")");
  // s * l' = s'  =>  k l_k c0 = k s_k - sum_{j=1}^{k-1} j l_j s_{k-j}
  const std::size_t m = s.order();
  TruncatedSeries l(m);
  l[0] = std::log(c0);
  for (std::size_t k = 1; k <= m; ++k) {
    std::complex<double> acc = static_cast<double>(k) * s[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * l[j] * s[k - j];
    l[k] = acc / (static_cast<double>(k) * c0);
  }
  return l;
}

TruncatedSeries series_exp(const TruncatedSeries& s) {
  // e' = s' e  =>  k e_k = sum_{j=1}^{k} j s_j e_{k-j}
  const std::size_t m = s.order();
  TruncatedSeries e(m);
  e[0] = std::exp(s[0]);
  for (std::size_t k = 1; k <= m; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * s[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (inner[0] != 0.0)
    fail(ErrorCode::InvalidArgument, "series_compose: inner series must have zero constant term");
  const std::size_t m = common_order(outer, inner);
  const TruncatedSeries in = inner.truncated(m);
  // Horner in the series ring: r = (...(a_M in + a_{M-1}) in + ...) + a_0.
  TruncatedSeries r(m);
  for (std::size_t i = m + 1; i-- > 0;) {
    r = r * in;
    r[0] += outer[i];
  }
  return r;
}

std::complex<double> series_eval(const TruncatedSeries& s, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = s.order() + 1; i-- > 0;) acc = acc * z + s[i];
  return acc;
}

}  // namespace rqite
