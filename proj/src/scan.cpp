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

#include "rqite/scan.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <limits>
#include <numbers>

#include "rqite/continuation.hpp"
#include "rqite/error.hpp"
#include "rqite/exact_oracle.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"

namespace rqite {

bool validate_gap_assumption(double gap, double eps, double gamma) {
  if (!(gap > 0.0) || !(eps > 0.0) || !(gamma > 0.0))
    fail(ErrorCode::InvalidArgument, "gap, eps and gamma must be positive");
  return gap / eps >= std::log(1.0 / (gamma * gamma * eps));
}

RqiteParameters derive_parameters(double gap, double eps, double gamma) {
  RqiteParameters p;
  p.gap_assumption_holds = validate_gap_assumption(gap, eps, gamma);
  const double g2 = gamma * gamma;
  p.beta = std::log(1.0 / (g2 * eps)) / gap;
  p.t_max = 4.0 / (std::numbers::pi * g2 * eps);
  p.xi = (p.beta / 2.0 + 1.0) * g2 * eps;
  return p;
}

double min_cluster_eps(double gap, double gamma, double beta_limit, double safety) {
  if (!(gap > 0.0) || !(gamma > 0.0) || !(beta_limit > 0.0) || !(safety > 0.0 && safety < 1.0))
    fail(ErrorCode::InvalidArgument, "min_cluster_eps needs positive inputs and safety in (0, 1)");
  const double beta = 0.5 * safety * beta_limit;
  return std::exp(-gap * beta) / (gamma * gamma);
}

namespace {

struct PointEstimate {
  complex d_beta, d_2beta;
  double bound;
};

using Evaluator = std::function<PointEstimate(double x)>;

}  // namespace

RqiteResult scan(const LocalHamiltonian& h, const SemiClassicalState& psi, const RqiteConfig& cfg) {
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) fail(ErrorCode::InvalidArgument, "gamma must lie in (0, 1]");
  if (!(cfg.gap > 0.0) || !(cfg.eps > 0.0)) fail(ErrorCode::InvalidArgument, "gap and eps must be positive");
  if (!(cfg.ea <= cfg.eb)) fail(ErrorCode::InvalidArgument, "need E_a <= E_b");
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) fail(ErrorCode::InvalidArgument, "mu must lie in (0, 1)");
  if (psi.n_qubits() != h.n_qubits())
    fail(ErrorCode::InvalidArgument, "state and Hamiltonian have different qubit counts");

  RqiteResult res;
  res.backend = cfg.backend;
  res.params = derive_parameters(cfg.gap, cfg.eps, cfg.gamma);
  if (!res.params.gap_assumption_holds)
    warn("gap assumption Delta/eps >= ln(1/(gamma^2 eps)) does not hold; proceeding");
  const double beta = res.params.beta;
  if (!(beta > 0.0))
    fail(ErrorCode::Domain, "derived beta is not positive (gamma^2 eps >= 1); decrease eps");
  const double g2 = cfg.gamma * cfg.gamma;
  res.tolerance = g2 * beta * cfg.eps / 2.0;
  const double span = (cfg.eb - cfg.ea) / cfg.eps;
  res.grid_points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  const double x_last = cfg.ea + cfg.eps * static_cast<double>(res.grid_points - 1);
  const double tau = res.tolerance;

  Evaluator eval;
  switch (cfg.backend) {
    case Backend::Exact: {
      auto spec = std::make_shared<SpectralData>(spectrum(h, psi));
      eval = [spec, beta](double x) {
        return PointEstimate{exact_partition(*spec, x, beta), exact_partition(*spec, x, 2.0 * beta), 0.0};
      };
      break;
    }
    case Backend::Cluster: {
      const double limit = cluster_beta_limit(h);
      if (!(2.0 * beta < limit))
        fail(ErrorCode::NotApplicable, "cluster backend needs 2 beta < " + std::to_string(limit) +
                                           " but beta = " + std::to_string(beta) +
                                           "; normalise H or relax eps");
      // D_b(H - x) = e^{b x} D_b(H): estimate once and scale.
      const double damp1 = std::exp(beta * x_last), damp2 = std::exp(2.0 * beta * x_last);
      const auto e1 = estimate_partition(h, 0.0, beta, psi, tau / damp1);
      const auto e2 = estimate_partition(h, 0.0, 2.0 * beta, psi, tau / damp2);
      res.max_order = std::max(e1.order, e2.order);
      eval = [e1, e2, beta](double x) {
        const double f1 = std::exp(beta * x), f2 = std::exp(2.0 * beta * x);
        return PointEstimate{e1.value * f1, e2.value * f2,
                             e1.additive_error_bound * f1 + e2.additive_error_bound * f2};
      };
      break;
    }
    case Backend::HadamardMc: {
      auto spec = std::make_shared<SpectralData>(spectrum(h, psi));
      const double half = tau / 2.0;
      if (!(half < 1.0)) fail(ErrorCode::Domain, "per-point tolerance too large for the Monte-Carlo backend");
      const std::size_t k = res.grid_points;
      const double mu_half = cfg.mu / 2.0;
      auto make = [&](double b, std::uint64_t stream, std::size_t& count, double& t_used) {
        t_used = truncation_time(b, half);
        count = sample_count(cauchy_norm(b, t_used), half, k, mu_half);
        return std::make_shared<McSampleSet>(
            generate_samples(*spec, b, t_used, count, cfg.mc_mode, derive_seed(cfg.seed, stream)));
      };
      auto s1 = make(beta, 0, res.samples_beta, res.t_used_beta);
      auto s2 = make(2.0 * beta, 1, res.samples_2beta, res.t_used_2beta);
      eval = [s1, s2, k, mu_half](double x) {
        const auto a = estimate_Z(*s1, x, k, mu_half);
        const auto b = estimate_Z(*s2, x, k, mu_half);
        return PointEstimate{a.partition.value, b.partition.value,
                             a.partition.additive_error_bound + b.partition.additive_error_bound};
      };
      break;
    }
    case Backend::Continuation: {
      if (psi.size() != 1)
        fail(ErrorCode::NotApplicable, "continuation backend needs a single product guiding state");
      const auto u = ShallowCircuit::preparing(psi.components()[0].state);
      const auto hp = conjugate_by_circuit(h, u);
      const double bstar = beta_star(InteractionGraph::build(hp).effective_degree()) /
                           std::max(1.0, hp.max_abs_coefficient());
      ContinuationOptions opt;
      opt.gap = cfg.gap;
      if (cfg.continuation_p0) {
        opt.p0 = *cfg.continuation_p0;
      } else {
        opt.p0 = spectrum(h, psi).p0;
      }
      auto run = [&](double b) {
        std::size_t order;
        if (cfg.continuation_order) {
          order = *cfg.continuation_order;
        } else {
          const auto params = select_continuation_params(b, bstar);
          const double e_bound = 2.0 * hp.coefficient_one_norm();
          const double f_max = continuation_f_max(params, hp.num_terms(), e_bound);
          const auto o = continuation_order(params, tau / 2.0, hp.num_terms(), b * e_bound, f_max);
          if (!o.feasible || o.order > static_cast<std::size_t>(limits().continuation_compute_max_order))
            fail(ErrorCode::CapExceeded,
                 "continuation order needed at beta = " + std::to_string(b) + " is " +
                     (o.feasible ? std::to_string(o.order) : std::string("beyond the feasibility cap")) +
                     "; pass an explicit order to accept a larger remainder");
          order = o.order;
        }
        return continued_log_partition(hp, 0.0, b, bstar, order, opt);
      };
      const auto c1 = run(beta);
      const auto c2 = run(2.0 * beta);
      res.max_order = std::max(c1.estimate.order, c2.estimate.order);
      eval = [c1, c2, beta](double x) {
        const complex d1 = std::exp(c1.log_value + beta * x);
        const complex d2 = std::exp(c2.log_value + 2.0 * beta * x);
        return PointEstimate{d1, d2, std::abs(d1) * std::expm1(c1.remainder) + std::abs(d2) * std::expm1(c2.remainder)};
      };
      break;
    }
  }

  double running_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < res.grid_points; ++k) {
    const double x = cfg.ea + cfg.eps * static_cast<double>(k);
    PointEstimate pe;
    try {
      pe = eval(x);
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " (at x = " + std::to_string(x) + ")");
    }
    const double r = (pe.d_beta - pe.d_2beta).real();
    res.trace.push_back({x, r, pe.bound, pe.d_beta, pe.d_2beta});
    // Both rules need an earlier, larger value: far left of E_0 the residue is
    // tiny because of the e^{bx} damping, and an interval entirely above E_0
    // never shows a positive residue at all.
    const double prior_max = running_max;
    if (r > running_max) {
      running_max = r;
      res.e_max = x;
    }
    const char* why = nullptr;
    if (r <= 0.0 && prior_max > 0.0)
      why = "nonpositive";
    else if (r > 0.0 && r < res.params.xi && r < prior_max)
      why = "threshold";
    if (why) {
      res.e0_estimate = x;
      res.terminated_at = k;
      res.termination = why;
      return res;
    }
  }
  fail(ErrorCode::ScanExhausted,
       "scan exhausted [" + std::to_string(cfg.ea) + ", " + std::to_string(cfg.eb) +
           "] without termination; the overlap, gap or interval promise is violated");
}

}  // namespace rqite
