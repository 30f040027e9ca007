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
#include <optional>
#include <vector>

#include "rqite/expansion.hpp"
#include "rqite/hadamard_mc.hpp"
#include "rqite/hamiltonian.hpp"

namespace rqite {

/// Delta/eps >= ln(1/(gamma^2 eps)).
bool validate_gap_assumption(double gap, double eps, double gamma);

struct RqiteParameters {
  double beta;
  /// Maximal evolution time 4/(pi gamma^2 eps).
  double t_max;
  /// Termination threshold (beta/2 + 1) gamma^2 eps.
  double xi;
  bool gap_assumption_holds;
};

/// beta = ln(1/(gamma^2 eps))/Delta, T = 4/(pi gamma^2 eps),
/// Xi = (beta/2 + 1) gamma^2 eps.
RqiteParameters derive_parameters(double gap, double eps, double gamma);

/// Smallest eps for which the cluster backend applies to a Hamiltonian with
/// cluster limit beta_limit: 2 beta = safety * beta_limit.
double min_cluster_eps(double gap, double gamma, double beta_limit, double safety = 0.5);

struct RqiteConfig {
  double gamma = 0.0;
  double gap = 0.0;
  double eps = 0.0;
  double ea = 0.0;
  double eb = 0.0;
  Backend backend = Backend::Exact;
  double mu = 0.05;
  std::uint64_t seed = 0;
  McMode mc_mode = McMode::Expectation;
  /// Continuation backend: order override and promised overlap/gap of the
  /// guiding state (taken from the oracle when absent and n is small).
  std::optional<std::size_t> continuation_order;
  std::optional<double> continuation_p0;
};

struct TracePoint {
  double x;
  double residue;
  double error_bound;
  complex d_beta;
  complex d_2beta;
};

struct RqiteResult {
  double e0_estimate = 0.0;
  std::size_t terminated_at = 0;
  /// "threshold" (R < Xi after a descent) or "nonpositive" (R <= 0).
  const char* termination = "";
  double e_max = 0.0;
  std::vector<TracePoint> trace;
  RqiteParameters params{};
  Backend backend = Backend::Exact;
  /// Per-estimate tolerance gamma^2 beta eps / 2.
  double tolerance = 0.0;
  std::size_t grid_points = 0;
  /// Backend detail: series order (cluster/continuation), samples (mc).
  std::size_t max_order = 0;
  std::size_t samples_beta = 0;
  std::size_t samples_2beta = 0;
  double t_used_beta = 0.0;
  double t_used_2beta = 0.0;
};

/// Evaluates R(x) = D_b(H - x) - D_2b(H - x) at x = E_a, E_a + eps, ... and
/// stops at the first x where R has fallen below its running maximum and
/// either R <= 0 or R < Xi. Raises ScanExhausted when no point qualifies.
RqiteResult scan(const LocalHamiltonian& h, const SemiClassicalState& psi, const RqiteConfig& cfg);

}  // namespace rqite
