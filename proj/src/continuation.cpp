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

#include "rqite/continuation.hpp"

#include <cmath>
#include <numbers>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {

ContinuationParams select_continuation_params(double beta, double beta_star, std::optional<double> nu_override) {
  if (!(beta > 0.0) || !(beta_star > 0.0)) fail(ErrorCode::InvalidArgument, "beta and beta_star must be positive");
  ContinuationParams p;
  p.beta = beta;
  p.beta_star = beta_star;
  p.w = beta_star / (2.0 * beta);
  p.nu_prime = -1.0 / std::expm1(-std::numbers::pi * beta / beta_star);
  p.nu = nu_override ? *nu_override : 0.5 * (1.0 + p.nu_prime);
  if (!(p.nu > 1.0 && p.nu < p.nu_prime))
    fail(ErrorCode::InvalidArgument, "nu must satisfy 1 < nu < nu' = " + std::to_string(p.nu_prime));
  p.alpha = 1.0 / p.nu;
  return p;
}

complex conformal_map(const ContinuationParams& p, complex z) {
  return std::log(1.0 - z / p.nu_prime) / std::log1p(-1.0 / p.nu_prime);
}

TruncatedSeries conformal_map_coeffs(const ContinuationParams& p, std::size_t order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "map order must be at least 1");
  TruncatedSeries s(order);
  const double denom = std::log1p(-1.0 / p.nu_prime);
  for (std::size_t l = 1; l <= order; ++l)
    s[l] = -1.0 / (static_cast<double>(l) * std::pow(p.nu_prime, static_cast<double>(l)) * denom);
  return s;
}

MapExtent map_extent(const ContinuationParams& p, std::size_t points) {
  MapExtent e{0.0, 0.0};
  for (std::size_t i = 0; i < points; ++i) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
    const complex v = p.beta * conformal_map(p, std::polar(p.nu, th));
    e.max_re = std::max(e.max_re, std::abs(v.real()));
    e.max_im = std::max(e.max_im, std::abs(v.imag()));
  }
  return e;
}

double continuation_f_max(const ContinuationParams& p, std::size_t n_terms, double e_bound, double poly_n) {
  const double r = p.w * p.beta / p.beta_star;
  if (!(r < 1.0)) fail(ErrorCode::Domain, "continuation strip leaves the cluster regime");
  return map_extent(p).max_re * e_bound + static_cast<double>(n_terms) * r / (1.0 - r) + poly_n;
}

ContinuationOrder continuation_order(const ContinuationParams& p, double eps, std::size_t n_terms,
                                     double abs_beta_e_bound, double f_max, double poly_multiplier) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  ContinuationOrder o;
  const double g = std::exp(2.0 * std::numbers::pi * p.beta / p.beta_star);
  o.formula = g * std::log(g / eps * (abs_beta_e_bound + poly_multiplier * static_cast<double>(n_terms)));
  o.remainder = std::log(f_max / (eps * (1.0 - p.alpha))) / std::log(1.0 / p.alpha) - 1.0;
  const double m = std::max({o.formula, o.remainder, 1.0});
  o.feasible = std::isfinite(m) && m <= limits().continuation_max_order;
  o.order = o.feasible ? static_cast<std::size_t>(std::ceil(m)) : 0;
  return o;
}

ZeroFreeCertificate zero_free_certificate(double p0, double gap, complex beta) {
  if (!(p0 > 0.0 && p0 <= 1.0 + 1e-12)) fail(ErrorCode::InvalidArgument, "p0 must lie in (0, 1]");
  ZeroFreeCertificate c;
  if (gap > 0.0 && p0 < 1.0)
    c.worst_zero = complex{std::log((1.0 - p0) / p0), std::numbers::pi} / gap;
  if (p0 < 0.5) {
    c.reason = "ground-state overlap below 1/2";
  } else if (!(beta.real() > 0.0)) {
    c.reason = "Re beta is not positive";
  } else {
    c.certified = true;
    c.reason = "ok";
  }
  return c;
}

ContinuationResult continued_log_partition(const LocalHamiltonian& h_prime, double shift, double beta,
                                           double beta_star, std::size_t order,
                                           const ContinuationOptions& options) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "continuation order must be at least 1");
  if (order > static_cast<std::size_t>(limits().continuation_compute_max_order))
    fail(ErrorCode::CapExceeded, "continuation order " + std::to_string(order) + " exceeds the cap of " +
                                     std::to_string(limits().continuation_compute_max_order));
  ContinuationResult res;
  res.certificate = zero_free_certificate(options.p0, options.gap, beta);
  if (!res.certificate.certified)
    fail(ErrorCode::NotApplicable, "zero-free certificate failed: " + res.certificate.reason);
  res.params = select_continuation_params(beta, beta_star, options.nu);

  const auto zero = ProductState::zeros(h_prime.n_qubits());
  auto a = log_amplitude_series(h_prime, zero, zero, order);
  res.center = -a[1].real();
  a[0] = 0.0;
  a[1] = 0.0;
  complex pow_b = 1.0;
  for (std::size_t l = 0; l <= order; ++l, pow_b *= beta) a[l] *= pow_b;

  const auto phi = conformal_map_coeffs(res.params, order);
  const auto composed = series_compose(a, phi);
  complex f = 0.0;
  for (std::size_t m = 0; m <= order; ++m) f += composed[m];

  res.log_value = -beta * (res.center - shift) + f;
  const double e_bound = options.e_bound ? *options.e_bound : 2.0 * h_prime.coefficient_one_norm();
  res.f_max = continuation_f_max(res.params, h_prime.num_terms(), e_bound, options.poly_n);
  res.poly_n_dropped = options.poly_n == 0.0;
  const double alpha = res.params.alpha;
  res.remainder = std::pow(alpha, static_cast<double>(order + 1)) / (1.0 - alpha) * res.f_max;

  res.estimate.value = std::exp(res.log_value);
  // |e^{l + d} - e^{l}| <= |e^{l}| (e^{|d|} - 1)
  res.estimate.additive_error_bound = std::abs(res.estimate.value) * std::expm1(res.remainder);
  res.estimate.order = order;
  res.estimate.backend = Backend::Continuation;
  res.estimate.log_pairs = 1;
  return res;
}

}  // namespace rqite
