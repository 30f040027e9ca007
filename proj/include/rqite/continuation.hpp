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
#include <optional>
#include <string>

#include "rqite/expansion.hpp"
#include "rqite/hamiltonian.hpp"
#include "rqite/series.hpp"

namespace rqite {

struct ContinuationParams {
  double beta = 0.0;
  double beta_star = 0.0;
  /// Bound on |Im phi(z)| over the disk; w = beta_star / (2 beta).
  double w = 0.0;
  double nu_prime = 0.0;
  /// Radius of the disk on which phi is used, 1 < nu < nu_prime.
  double nu = 0.0;
  double alpha = 0.0;
};

/// w = beta_star/(2 beta), nu' = 1/(1 - e^{-pi beta/beta_star}),
/// nu = (1 + nu')/2 unless overridden, alpha = 1/nu.
ContinuationParams select_continuation_params(double beta, double beta_star,
                                              std::optional<double> nu_override = std::nullopt);

/// phi(z) = log(1 - z/nu') / log(1 - 1/nu'), so phi(0) = 0 and phi(1) = 1.
complex conformal_map(const ContinuationParams& p, complex z);

/// Taylor coefficients of phi through order L:
/// phi_l = -1 / (l nu'^l log(1 - 1/nu')).
TruncatedSeries conformal_map_coeffs(const ContinuationParams& p, std::size_t order);

/// max over |z| = nu of |Re(beta phi(z))| and |Im(beta phi(z))|, sampled at
/// `points` angles.
struct MapExtent {
  double max_re;
  double max_im;
};
MapExtent map_extent(const ContinuationParams& p, std::size_t points = 3600);

/// Bound on |f| over the disk used by the Taylor remainder:
/// max|Re(beta phi)| e_bound + |S| r / (1 - r), r = w beta / beta_star.
/// The amplitude-floor term poly_n is added as given.
double continuation_f_max(const ContinuationParams& p, std::size_t n_terms, double e_bound, double poly_n = 0.0);

struct ContinuationOrder {
  /// Closed-form order e^{2 pi b/b*} ln[(e^{2 pi b/b*}/eps)(|b E| + c |S|)].
  double formula = 0.0;
  /// Smallest M with alpha^{M+1}/(1 - alpha) F_max <= eps.
  double remainder = 0.0;
  /// ceil(max(formula, remainder)); meaningful only when feasible.
  std::size_t order = 0;
  bool feasible = false;
};

ContinuationOrder continuation_order(const ContinuationParams& p, double eps, std::size_t n_terms,
                                     double abs_beta_e_bound, double f_max, double poly_multiplier = 1.0);

struct ZeroFreeCertificate {
  bool certified = false;
  /// Zero of p0 + (1 - p0) e^{-b gap} with the largest real part,
  /// (ln((1 - p0)/p0) + i pi)/gap; absent when p0 == 1 or gap == 0.
  std::optional<complex> worst_zero;
  std::string reason;
};

/// Certified iff p0 >= 1/2 and Re beta > 0.
ZeroFreeCertificate zero_free_certificate(double p0, double gap, complex beta);

struct ContinuationOptions {
  std::optional<double> nu;
  /// Ground-state overlap and gap of |0...0> under H'. Required for the
  /// certificate; callers obtain them from the oracle or promise them.
  double p0 = 0.0;
  double gap = 0.0;
  /// Energy scale in F_max; defaults to 2 sum|lambda'| when unset.
  std::optional<double> e_bound;
  double poly_n = 0.0;
};

struct ContinuationResult {
  complex log_value;
  PartitionEstimate estimate;
  double remainder = 0.0;
  double f_max = 0.0;
  /// <0|H'|0>, removed exactly before the expansion.
  double center = 0.0;
  ContinuationParams params;
  ZeroFreeCertificate certificate;
  bool poly_n_dropped = true;
};

/// log D_b(H' - x) at |0...0> from the order-M cluster series composed with
/// b phi(z) and summed at z = 1. The first moment is split off as an exact
/// scalar shift, so the composed series carries only the centred part.
ContinuationResult continued_log_partition(const LocalHamiltonian& h_prime, double shift, double beta,
                                           double beta_star, std::size_t order,
                                           const ContinuationOptions& options);

}  // namespace rqite
