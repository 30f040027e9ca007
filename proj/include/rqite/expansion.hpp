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
#include <string>
#include <vector>

#include "rqite/hamiltonian.hpp"
#include "rqite/series.hpp"

namespace rqite {

/// Coefficients s_m = <y|(-H)^m|x> / m!, so that <y|e^{-bH}|x> = sum_m s_m b^m.
/// Computed by sparse propagation in the per-qubit orthonormal bases
/// {x_q, x_q^perp}; every step is a sort-and-merge, so results are
/// reproducible bit for bit.
std::vector<complex> moment_series(const LocalHamiltonian& h, const ProductState& x,
                                   const ProductState& y, std::size_t order);

/// mu_m = <y|H^m|x> for m = 0..order. Overflows for large orders; prefer
/// moment_series.
std::vector<complex> compute_moments(const LocalHamiltonian& h, const ProductState& x,
                                     const ProductState& y, std::size_t order);

/// Taylor series in b of <y|e^{-bH}|x> through `order`.
TruncatedSeries amplitude_series(const LocalHamiltonian& h, const ProductState& x,
                                 const ProductState& y, std::size_t order);

/// Taylor series in b of log <y|e^{-bH}|x>. Raises DegenerateOverlap when
/// |<y|x>| is below `floor`.
TruncatedSeries log_amplitude_series(const LocalHamiltonian& h, const ProductState& x,
                                     const ProductState& y, std::size_t order,
                                     double floor = kSeriesLogFloor);

/// ceil(ln(|S| / (eps (1 - beta/beta_star))) / ln(beta_star/beta)), at least 1.
/// Requires 0 < beta < beta_star.
std::size_t truncation_order(std::size_t n_terms, double beta, double beta_star, double eps);

/// |S| r^{M+1} / (1 - r) with r = 2 e^2 d (d + 1) |beta|. Requires r < 1.
double cluster_tail_bound(std::size_t n_terms, std::size_t degree_eff, double abs_beta, std::size_t order);

/// sum_{m > order} a^m / m!, the tail of the exponential series.
double exp_series_tail(double a, std::size_t order);

enum class Backend { Exact, Cluster, HadamardMc, Continuation };

const char* backend_name(Backend b) noexcept;
Backend parse_backend(const std::string& name);

struct PartitionEstimate {
  complex value;
  double additive_error_bound = 0.0;
  std::size_t order = 0;
  Backend backend = Backend::Cluster;
  /// Component pairs evaluated through the log series / the direct series.
  std::size_t log_pairs = 0;
  std::size_t direct_pairs = 0;
};

struct ClusterOptions {
  /// Fraction of beta_star above which the cluster backend refuses. The
  /// geometric tail needs a ratio strictly below one.
  double max_ratio = 1.0;
};

/// Estimate of D_b(H - x) = <psi|e^{-b(H - x)}|psi> with additive accuracy eps.
/// Same-state component pairs use the log series with the cluster tail bound;
/// other pairs use the direct exponential series. The shift enters as the
/// exact factor e^{b x}.
PartitionEstimate estimate_partition(const LocalHamiltonian& h, double shift, complex beta,
                                     const SemiClassicalState& psi, double eps,
                                     const ClusterOptions& options = {});

/// Largest |beta| for which the cluster backend applies to h: beta_star of
/// the interaction graph divided by max(1, max |lambda|).
double cluster_beta_limit(const LocalHamiltonian& h);

}  // namespace rqite
