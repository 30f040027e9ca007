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

#include "rqite/commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "rqite/continuation.hpp"
#include "rqite/error.hpp"
#include "rqite/exact_oracle.hpp"
#include "rqite/expansion.hpp"
#include "rqite/hadamard_mc.hpp"
#include "rqite/interaction_graph.hpp"
#include "rqite/limits.hpp"
#include "rqite/scan.hpp"
#include "rqite/series.hpp"

namespace rqite {
namespace {

using json = nlohmann::json;

// Typed access to the options object. Every read is recorded in `resolved`
// together with defaults, and finish() rejects keys nobody asked for.
class Options {
 public:
  explicit Options(const json& j) : j_(j.is_null() ? json::object() : j) {
    if (!j_.is_object()) fail(ErrorCode::InvalidArgument, "options must be a JSON object");
  }

  double num(const std::string& k, double def) {
    const double v = has(k) ? get<double>(k) : def;
    resolved_[k] = v;
    return v;
  }
  std::optional<double> opt_num(const std::string& k) {
    if (!has(k)) return std::nullopt;
    const double v = get<double>(k);
    resolved_[k] = v;
    return v;
  }
  double req_num(const std::string& k) {
    if (!has(k)) fail(ErrorCode::InvalidArgument, "missing required option '" + k + "'");
    return num(k, 0.0);
  }
  std::uint64_t u64(const std::string& k, std::uint64_t def) {
    const std::uint64_t v = has(k) ? get<std::uint64_t>(k) : def;
    resolved_[k] = v;
    return v;
  }
  std::optional<std::uint64_t> opt_u64(const std::string& k) {
    if (!has(k)) return std::nullopt;
    return u64(k, 0);
  }
  std::string str(const std::string& k, const std::string& def) {
    const std::string v = has(k) ? get<std::string>(k) : def;
    resolved_[k] = v;
    return v;
  }
  bool flag(const std::string& k, bool def) {
    const bool v = has(k) ? get<bool>(k) : def;
    resolved_[k] = v;
    return v;
  }
  std::vector<double> list(const std::string& k, std::vector<double> def) {
    auto v = has(k) ? get<std::vector<double>>(k) : std::move(def);
    resolved_[k] = v;
    return v;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) fail(ErrorCode::InvalidArgument, "unknown option '" + k + "'");
  }
  const json& resolved() const { return resolved_; }

 private:
  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k) && !j_.at(k).is_null();
  }
  template <typename T>
  T get(const std::string& k) {
    try {
      return j_.at(k).get<T>();
    } catch (const json::exception&) {
      fail(ErrorCode::InvalidArgument, "option '" + k + "' has the wrong type");
    }
  }

  json j_;
  json resolved_ = json::object();
  std::set<std::string> seen_;
};

const LocalHamiltonian& need_h(const CommandInputs& in) {
  if (!in.hamiltonian) fail(ErrorCode::InvalidArgument, "this command needs a Hamiltonian");
  return *in.hamiltonian;
}

const SemiClassicalState& need_state(const CommandInputs& in) {
  if (!in.state) fail(ErrorCode::InvalidArgument, "this command needs a guiding state");
  return *in.state;
}

json complex_json(complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// Bound values may be infinite; JSON has no infinity, so report null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json estimate_json(const PartitionEstimate& e) {
  return json{{"value_re", e.value.real()},
              {"value_im", e.value.imag()},
              {"error_bound", finite_or_null(e.additive_error_bound)},
              {"M", e.order},
              {"backend", backend_name(e.backend)}};
}

json params_json(const ContinuationParams& p) {
  return json{{"beta", p.beta}, {"beta_star", p.beta_star}, {"w", p.w},
              {"nu_prime", p.nu_prime}, {"nu", p.nu}, {"alpha", p.alpha}};
}

json certificate_json(const ZeroFreeCertificate& c) {
  json j{{"certified", c.certified}, {"reason", c.reason}};
  if (c.worst_zero) j["worst_zero"] = complex_json(*c.worst_zero);
  return j;
}

// H' = U^dagger H U with U from the circuit, or from the single product
// state when no circuit is given. The guiding state becomes |0...0>.
LocalHamiltonian conjugated(const CommandInputs& in) {
  const auto& h = need_h(in);
  if (in.circuit) return conjugate_by_circuit(h, *in.circuit);
  const auto& psi = need_state(in);
  if (psi.size() != 1)
    fail(ErrorCode::NotApplicable, "continuation needs a circuit or a single product guiding state");
  return conjugate_by_circuit(h, ShallowCircuit::preparing(psi.components()[0].state));
}

// -- oracle -------------------------------------------------------------------

json cmd_oracle(Options& o, const CommandInputs& in) {
  const auto& h = need_h(in);
  const bool with_evals = o.flag("eigenvalues", false);
  o.finish();
  const auto psi = in.state ? *in.state : SemiClassicalState::single(ProductState::zeros(h.n_qubits()));
  const auto s = spectrum(h, psi);
  json r{{"n_qubits", h.n_qubits()}, {"n_terms", h.num_terms()}, {"E0", s.e0},
         {"gap", s.gap}, {"ground_degeneracy", s.ground_degeneracy}, {"norm", s.norm}};
  if (in.state) r["p0"] = s.p0;
  if (with_evals) r["eigenvalues"] = s.eigenvalues;
  return r;
}

// -- partition ----------------------------------------------------------------

json cmd_partition(Options& o, const CommandInputs& in) {
  const auto& h = need_h(in);
  const auto& psi = need_state(in);
  const Backend backend = parse_backend(o.str("backend", "cluster"));
  const complex beta{o.req_num("beta_re"), o.num("beta_im", 0.0)};
  const double shift = o.num("shift", 0.0);
  const double eps = o.num("eps", 1e-3);
  json extra = json::object();
  PartitionEstimate e;
  switch (backend) {
    case Backend::Exact: {
      o.finish();
      e.value = exact_partition(h, shift, beta, psi);
      e.backend = Backend::Exact;
      break;
    }
    case Backend::Cluster: {
      o.finish();
      e = estimate_partition(h, shift, beta, psi, eps);
      extra["log_pairs"] = e.log_pairs;
      extra["direct_pairs"] = e.direct_pairs;
      extra["beta_limit"] = cluster_beta_limit(h);
      break;
    }
    case Backend::HadamardMc: {
      const std::uint64_t seed = o.u64("seed", 0);
      const double mu = o.num("mu", 0.05);
      const double trunc_eps = o.num("trunc_eps", eps / 2.0);
      const McMode mode = parse_mc_mode(o.str("mode", "expectation"));
      const auto shots = o.opt_u64("shots");
      o.finish();
      if (beta.imag() != 0.0 || !(beta.real() > 0.0))
        fail(ErrorCode::InvalidArgument, "the Monte-Carlo backend needs a real beta > 0");
      const auto s = spectrum(h, psi);
      const double t = truncation_time(beta.real(), trunc_eps);
      const double norm = cauchy_norm(beta.real(), t);
      const std::size_t count = shots ? *shots : sample_count(norm, eps / 2.0, 1, mu);
      const auto set = generate_samples(s, beta.real(), t, count, mode, seed);
      const auto z = estimate_Z(set, shift, 1, mu);
      e = z.partition;
      extra["stat_err"] = z.stat_err;
      extra["tail_err"] = z.tail_err;
      extra["T"] = t;
      break;
    }
    case Backend::Continuation: {
      const auto order = o.opt_u64("order");
      const auto p0 = o.opt_num("p0");
      const auto gap = o.opt_num("gap");
      const auto nu = o.opt_num("nu");
      o.finish();
      if (beta.imag() != 0.0) fail(ErrorCode::InvalidArgument, "continuation needs a real beta");
      const auto hp = conjugated(in);
      const double bstar = beta_star(InteractionGraph::build(hp).effective_degree());
      ContinuationOptions co;
      co.nu = nu;
      if (p0 && gap) {
        co.p0 = *p0;
        co.gap = *gap;
      } else {
        const auto s = spectrum(hp, SemiClassicalState::single(ProductState::zeros(hp.n_qubits())));
        co.p0 = p0 ? *p0 : s.p0;
        co.gap = gap ? *gap : s.gap;
      }
      const auto r = continued_log_partition(hp, shift, beta.real(), bstar, order ? *order : 16, co);
      e = r.estimate;
      extra["remainder"] = finite_or_null(r.remainder);
      extra["certificate"] = certificate_json(r.certificate);
      break;
    }
  }
  json r = estimate_json(e);
  r.update(extra);
  return r;
}

// -- estimate -----------------------------------------------------------------

json cmd_estimate(Options& o, const CommandInputs& in) {
  const auto& h0 = need_h(in);
  const auto& psi = need_state(in);
  RqiteConfig cfg;
  cfg.gamma = o.req_num("gamma");
  cfg.gap = o.req_num("gap");
  cfg.eps = o.req_num("eps");
  cfg.ea = o.req_num("ea");
  cfg.eb = o.req_num("eb");
  cfg.backend = parse_backend(o.str("backend", "exact"));
  cfg.mu = o.num("mu", 0.05);
  cfg.seed = o.u64("seed", 0);
  cfg.mc_mode = parse_mc_mode(o.str("mode", "expectation"));
  if (auto m = o.opt_u64("order")) cfg.continuation_order = *m;
  cfg.continuation_p0 = o.opt_num("p0");
  const std::string norm = o.str("normalize", "none");
  o.finish();

  double scale = 1.0;
  std::optional<LocalHamiltonian> hn;
  if (norm == "exact" || norm == "bound") {
    auto r = normalize_hamiltonian(h0, norm == "exact" ? NormalizeMode::Exact : NormalizeMode::Bound);
    scale = r.scale;
    hn.emplace(std::move(r.hamiltonian));
  } else if (norm != "none") {
    fail(ErrorCode::InvalidArgument, "normalize must be none, exact or bound");
  }
  const LocalHamiltonian& h = hn ? *hn : h0;
  // Energies are given in the units of the input Hamiltonian.
  cfg.gap /= scale;
  cfg.eps /= scale;
  cfg.ea /= scale;
  cfg.eb /= scale;

  const auto res = scan(h, psi, cfg);
  json trace = json::array();
  for (const auto& p : res.trace)
    trace.push_back({{"x", p.x * scale},
                     {"R", p.residue},
                     {"error_bound", finite_or_null(p.error_bound)},
                     {"D_beta_re", p.d_beta.real()},
                     {"D_2beta_re", p.d_2beta.real()}});
  json r{{"E0_estimate", res.e0_estimate * scale},
         {"terminated_at", res.terminated_at},
         {"termination", res.termination},
         {"E_max", res.e_max * scale},
         {"backend", backend_name(res.backend)},
         {"scale", scale},
         {"parameters",
          {{"beta", res.params.beta},
           {"T", res.params.t_max},
           {"Xi", res.params.xi},
           {"gap_assumption_holds", res.params.gap_assumption_holds},
           {"tolerance", res.tolerance},
           {"grid_points", res.grid_points}}},
         {"trace", trace}};
  if (res.backend == Backend::Cluster || res.backend == Backend::Continuation) r["parameters"]["M"] = res.max_order;
  if (res.backend == Backend::HadamardMc) {
    r["parameters"]["samples"] = {res.samples_beta, res.samples_2beta};
    r["parameters"]["T_used"] = {res.t_used_beta, res.t_used_2beta};
  }
  return r;
}

// -- clusters -----------------------------------------------------------------

json cmd_clusters(Options& o, const CommandInputs& in) {
  const auto& h = need_h(in);
  const auto max_m = o.u64("max_m", 4);
  o.finish();
  if (max_m < 1) fail(ErrorCode::InvalidArgument, "max_m must be at least 1");
  const auto g = InteractionGraph::build(h);
  json sizes = json::array();
  for (std::size_t m = 1; m <= max_m; ++m) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = cluster_count_check(g, m);
    const auto t1 = std::chrono::steady_clock::now();
    const json count = c.count < 9.0e15 ? json(static_cast<std::uint64_t>(c.count)) : json(c.count);
    sizes.push_back({{"m", m},
                     {"count", count},
                     {"bound", c.bound},
                     {"ok", c.ok},
                     {"elapsed_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}});
  }
  return json{{"n_terms", g.size()},
              {"max_degree", g.max_degree()},
              {"effective_degree", g.effective_degree()},
              {"beta_star", beta_star(g.max_degree())},
              {"locality", h.locality()},
              {"sizes", sizes}};
}

// -- mc -----------------------------------------------------------------------

json cmd_mc(Options& o, const CommandInputs& in) {
  const auto& h = need_h(in);
  const auto& psi = need_state(in);
  const double beta = o.req_num("beta");
  const double trunc_eps = o.num("trunc_eps", 0.01);
  const std::uint64_t shots = o.u64("shots", 10000);
  const McMode mode = parse_mc_mode(o.str("mode", "expectation"));
  const std::uint64_t seed = o.u64("seed", 0);
  const double shift = o.num("shift", 0.0);
  const double mu = o.num("mu", 0.05);
  o.finish();
  const auto s = spectrum(h, psi);
  const double t = truncation_time(beta, trunc_eps);
  const auto set = generate_samples(s, beta, t, shots, mode, seed);
  const auto z = estimate_Z(set, shift, 1, mu);
  return json{{"Z_re", z.partition.value.real()},
              {"Z_im", z.partition.value.imag()},
              {"stat_err", z.stat_err},
              {"tail_err", z.tail_err},
              {"S", shots},
              {"T", t},
              {"norm", set.norm}};
}

// -- continue -----------------------------------------------------------------

json cmd_continue(Options& o, const CommandInputs& in) {
  const auto beta_abs = o.opt_num("beta");
  const auto beta_ratio = o.opt_num("beta_ratio");
  const auto order_opt = o.opt_u64("order");
  const auto nu = o.opt_num("nu");
  const double shift = o.num("shift", 0.0);
  const double eps = o.num("eps", 1e-2);
  const auto p0 = o.opt_num("p0");
  const auto gap = o.opt_num("gap");
  const double poly_n = o.num("poly_n", 0.0);
  const auto e_bound = o.opt_num("e_bound");
  o.finish();
  if (beta_abs.has_value() == beta_ratio.has_value())
    fail(ErrorCode::InvalidArgument, "give exactly one of beta and beta_ratio");

  const auto hp = conjugated(in);
  const auto g = InteractionGraph::build(hp);
  const double bstar = beta_star(g.effective_degree());
  const double beta = beta_abs ? *beta_abs : *beta_ratio * bstar;

  ContinuationOptions co;
  co.nu = nu;
  co.poly_n = poly_n;
  co.e_bound = e_bound;
  if (p0 && gap) {
    co.p0 = *p0;
    co.gap = *gap;
  } else {
    const auto s = spectrum(hp, SemiClassicalState::single(ProductState::zeros(hp.n_qubits())));
    co.p0 = p0 ? *p0 : s.p0;
    co.gap = gap ? *gap : s.gap;
  }
  if (co.poly_n == 0.0) warn("amplitude-floor term of F_max set to 0; the remainder omits it");

  const auto params = select_continuation_params(beta, bstar, nu);
  const double eb = e_bound ? *e_bound : 2.0 * hp.coefficient_one_norm();
  const double f_max = continuation_f_max(params, hp.num_terms(), eb, poly_n);
  const auto plan = continuation_order(params, eps, hp.num_terms(), beta * eb, f_max);
  std::size_t order;
  if (order_opt) {
    order = *order_opt;
  } else {
    if (!plan.feasible) fail(ErrorCode::CapExceeded, "continuation order is beyond the feasibility cap");
    order = plan.order;
  }
  const auto r = continued_log_partition(hp, shift, beta, bstar, order, co);
  return json{{"logD_re", r.log_value.real()},
              {"logD_im", r.log_value.imag()},
              {"remainder", finite_or_null(r.remainder)},
              {"f_max", r.f_max},
              {"center", r.center},
              {"order", order},
              {"order_plan",
               {{"formula", finite_or_null(plan.formula)},
                {"remainder", finite_or_null(plan.remainder)},
                {"feasible", plan.feasible}}},
              {"params", params_json(r.params)},
              {"certificate", certificate_json(r.certificate)},
              {"p0", co.p0},
              {"gap", co.gap},
              {"conjugated_terms", hp.num_terms()},
              {"conjugated_locality", hp.locality()},
              {"conjugated_max_degree", g.max_degree()},
              {"poly_n_dropped", r.poly_n_dropped}};
}

// -- bench --------------------------------------------------------------------

LocalHamiltonian tfim_chain(std::size_t n) {
  std::vector<Term> terms;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    terms.push_back({-1.0, PauliString(n, {{i, Pauli::Z}, {i + 1, Pauli::Z}})});
  for (std::uint32_t i = 0; i < n; ++i) terms.push_back({-1.0, PauliString(n, {{i, Pauli::X}})});
  return LocalHamiltonian(n, std::move(terms));
}

template <typename F>
std::pair<double, double> time_ms(std::size_t repeats, F&& f) {
  std::vector<double> ms;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  double mean = 0.0, var = 0.0;
  for (double v : ms) mean += v;
  mean /= static_cast<double>(ms.size());
  for (double v : ms) var += (v - mean) * (v - mean);
  const double sd = ms.size() > 1 ? std::sqrt(var / static_cast<double>(ms.size() - 1)) : 0.0;
  return {mean, sd};
}

json cmd_bench(Options& o, const CommandInputs&) {
  const auto n_min = o.u64("n_min", 4);
  const auto n_max = o.u64("n_max", 12);
  const auto m_max = o.u64("m_max", 4);
  const auto orders = o.list("orders", {8, 16, 32, 64});
  const auto repeats = o.u64("repeats", 3);
  o.finish();
  if (n_min < 2 || n_max < n_min || m_max < 1 || repeats < 1)
    fail(ErrorCode::InvalidArgument, "bench needs 2 <= n_min <= n_max, m_max >= 1, repeats >= 1");

  json rows = json::array();
  std::ostringstream csv;
  csv << "kind,n,terms,m,M,count,ms_mean,ms_std\n";
  auto add = [&](const char* kind, std::size_t n, std::size_t terms, std::size_t m, std::size_t big_m,
                 double count, std::pair<double, double> t) {
    rows.push_back({{"kind", kind}, {"n", n}, {"terms", terms}, {"m", m}, {"M", big_m},
                    {"count", count}, {"ms_mean", t.first}, {"ms_std", t.second}});
    csv << kind << ',' << n << ',' << terms << ',' << m << ',' << big_m << ',' << count << ','
        << t.first << ',' << t.second << '\n';
  };
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const auto h = tfim_chain(n);
    const auto g = InteractionGraph::build(h);
    for (std::size_t m = 1; m <= m_max; ++m) {
      double count = 0.0;
      const auto t = time_ms(repeats, [&] { count = static_cast<double>(enumerate_connected_clusters(g, m).size()); });
      add("enumerate", n, h.num_terms(), m, 0, count, t);
    }
    const auto plus = ProductState(std::vector<ProductState::Qubit>(
        n, ProductState::Qubit{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2}));
    for (double mo : orders) {
      const auto big_m = static_cast<std::size_t>(mo);
      const auto t = time_ms(repeats, [&] { (void)moment_series(h, plus, plus, big_m); });
      add("moments", n, h.num_terms(), 0, big_m, 0.0, t);
    }
  }
  return json{{"rows", rows}, {"csv", csv.str()}};
}

// -- selftest -----------------------------------------------------------------

json cmd_selftest(Options& o, const CommandInputs&) {
  o.finish();
  json checks = json::array();
  std::size_t failed = 0;
  auto check = [&](const char* name, const std::function<bool()>& f) {
    bool ok = false;
    std::string detail;
    try {
      ok = f();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (!ok) ++failed;
    json c{{"name", name}, {"ok", ok}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
  };
  auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
  const double r2 = 1.0 / std::numbers::sqrt2;
  const ProductState plus({{r2, r2}});

  check("parse two terms", [] {
    const auto h = parse_hamiltonian("1.0 Z0 Z1\n0.5 X0").hamiltonian;
    return h.num_terms() == 2 && h.locality() == 2;
  });
  check("merge to empty is rejected", [] {
    try {
      parse_hamiltonian("1.0 Z0 Z1\n-1.0 Z0 Z1");
    } catch (const Error& e) {
      return std::string(e.what()).find("empty after merge") != std::string::npos;
    }
    return false;
  });
  check("Y|0> = i|1>", [] {
    const auto r = apply_pauli(PauliString(1, {{0, Pauli::Y}}), ProductState::basis(1, 0));
    return std::abs(r.phase - complex{0.0, 1.0}) < 1e-15 && std::abs(r.state.qubit(0)[1] - 1.0) < 1e-15;
  });
  check("HZH = X", [] {
    const auto h = parse_hamiltonian("1 Z0").hamiltonian;
    const auto r = conjugate_by_circuit(h, parse_circuit_json(R"({"gates":[{"name":"H","targets":[0]}]})"));
    return r.num_terms() == 1 && r.terms()[0].op.at(0) == Pauli::X && std::abs(r.terms()[0].coefficient - 1.0) < 1e-14;
  });
  check("beta_star(1)", [&] { return near(beta_star(1), 0.033834, 1e-6); });
  check("beta_star(2)", [&] { return near(beta_star(2), 0.011278, 1e-6); });
  check("lattice bound k=2 D=1", [] { return lattice_degree_bound(2, 1) == 256.0; });
  check("log(1+z)", [] {
    const auto l = series_log(TruncatedSeries({1.0, 1.0, 0.0, 0.0}));
    return std::abs(l[1] - 1.0) < 1e-15 && std::abs(l[2] + 0.5) < 1e-15 && std::abs(l[3] - 1.0 / 3.0) < 1e-15;
  });
  check("truncation order 12", [] { return truncation_order(2, 0.5, 1.0, 1e-3) == 12; });
  check("spectrum Z on |+>", [&] {
    const auto s = spectrum(parse_hamiltonian("1 Z0").hamiltonian, SemiClassicalState::single(plus));
    return near(s.e0, -1.0, 1e-12) && near(s.gap, 2.0, 1e-12) && near(s.p0, 0.5, 1e-12);
  });
  check("partition at shift E0", [&] {
    const auto d = exact_partition(parse_hamiltonian("1 Z0").hamiltonian, -1.0, 1.0, SemiClassicalState::single(plus));
    return near(d.real(), 0.5 * (1.0 + std::exp(-2.0)), 1e-12);
  });
  check("derive parameters", [&] {
    const auto p = derive_parameters(2.0, 0.1, std::sqrt(0.5));
    return near(p.beta, 1.49787, 1e-5) && near(p.t_max, 25.4648, 1e-4) && near(p.xi, 0.087447, 1e-6);
  });
  check("gap assumption", [] {
    return validate_gap_assumption(2.0, 0.1, std::sqrt(0.5)) && !validate_gap_assumption(0.1, 0.1, std::sqrt(0.5));
  });
  check("cauchy norm", [&] { return near(cauchy_norm(1.0, 1.0), 0.5, 1e-15); });
  check("truncation time", [&] { return near(truncation_time(1.0, 0.01), 63.657, 1e-3); });
  check("sample count 3434", [] { return sample_count(0.9, 0.05, 100, 0.01) == 3434; });
  check("continuation params", [&] {
    const auto p = select_continuation_params(1.0, 1.0);
    return near(p.nu_prime, 1.045166, 1e-6) && near(p.nu, 1.022583, 1e-6) && near(p.alpha, 0.977916, 1e-6);
  });
  check("zero-free certificate", [] {
    return zero_free_certificate(0.5, 1.0, 1.0).certified && !zero_free_certificate(0.4, 1.0, 1.0).certified;
  });
  check("scan H=Z exact", [&] {
    RqiteConfig c;
    c.gamma = std::sqrt(0.5);
    c.gap = 2.0;
    c.eps = 0.1;
    c.ea = -2.0;
    c.eb = 0.0;
    const auto r = scan(parse_hamiltonian("1 Z0").hamiltonian, SemiClassicalState::single(plus), c);
    return r.e0_estimate >= -1.1 && r.e0_estimate <= -0.9;
  });

  return json{{"checks", checks}, {"passed", checks.size() - failed}, {"failed", failed}};
}

}  // namespace

nlohmann::json run_command(const std::string& command, const nlohmann::json& options, const CommandInputs& inputs) {
  static const std::map<std::string, std::function<json(Options&, const CommandInputs&)>> table = {
      {"oracle", cmd_oracle},     {"partition", cmd_partition}, {"estimate", cmd_estimate},
      {"clusters", cmd_clusters}, {"mc", cmd_mc},               {"continue", cmd_continue},
      {"bench", cmd_bench},       {"selftest", cmd_selftest},
  };
  const auto it = table.find(command);
  if (it == table.end()) fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  Options o(options);
  json result = it->second(o, inputs);
  return json{{"config", o.resolved()}, {"result", std::move(result)}};
}

}  // namespace rqite
