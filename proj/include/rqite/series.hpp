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

#include <complex>
#include <cstddef>
#include <vector>

namespace rqite {

/// Complex power series c_0 + c_1 z + ... + c_M z^M, with the truncation order
/// M stored explicitly. Binary operations on series of different orders
/// truncate to the smaller order and emit a warning.
class TruncatedSeries {
 public:
  using complex = std::complex<double>;

  TruncatedSeries() : c_(1, 0.0) {}
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, 0.0) {}
  explicit TruncatedSeries(std::vector<complex> coefficients);

  /// The series z truncated at `order`.
  static TruncatedSeries identity(std::size_t order);

  std::size_t order() const noexcept { return c_.size() - 1; }
  const std::vector<complex>& coefficients() const noexcept { return c_; }
  complex& operator[](std::size_t i) { return c_[i]; }
  const complex& operator[](std::size_t i) const { return c_[i]; }

  TruncatedSeries truncated(std::size_t order) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(complex s, const TruncatedSeries& a);

 private:
  std::vector<complex> c_;
};

/// Smallest constant-term modulus accepted by series_log.
inline constexpr double kSeriesLogFloor = 1e-12;

/// Formal logarithm. The constant term is the principal log of c_0.
TruncatedSeries series_log(const TruncatedSeries& s, double floor = kSeriesLogFloor);
TruncatedSeries series_exp(const TruncatedSeries& s);

/// outer(inner(z)) truncated at min(orders). Requires inner[0] == 0.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// Horner evaluation.
std::complex<double> series_eval(const TruncatedSeries& s, std::complex<double> z);

}  // namespace rqite
