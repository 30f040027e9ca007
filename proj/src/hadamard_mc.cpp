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

#include "rqite/hadamard_mc.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {
namespace {

constexpr std::size_t kChunk = 4096;

}  // namespace

double cauchy_norm(double beta, double t_max) {
  if (!(beta > 0.0) || !(t_max > 0.0)) fail(ErrorCode::InvalidArgument, "beta and T must be positive");
  return 2.0 / std::numbers::pi * std::atan(t_max / beta);
}

double truncation_time(double beta, double eps_t) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  if (!(eps_t > 0.0 && eps_t < 1.0)) fail(ErrorCode::InvalidArgument, "eps_t must lie in (0, 1)");
  return beta * std::tan(std::numbers::pi * (1.0 - eps_t) / 2.0);
}

double uniform_open01(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> sample_times(double beta, double t_max, std::size_t count, std::uint64_t seed) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "sample count must be at least 1");
  cauchy_norm(beta, t_max);  // validates
  const double a = std::atan(t_max / beta);
  std::vector<double> out(count);
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double u = uniform_open01(rng());
      out[i] = std::clamp(beta * std::tan((2.0 * u - 1.0) * a), -t_max, t_max);
    }
  });
  return out;
}

std::size_t sample_count(double norm, double eps, std::size_t m_points, double mu) {
  if (!(norm > 0.0) || !(eps > 0.0) || m_points == 0 || !(mu > 0.0 && mu < 1.0))
    fail(ErrorCode::InvalidArgument, "sample_count needs positive norm, eps, M and mu in (0, 1)");
  const double v = norm * norm * std::log(4.0 * static_cast<double>(m_points) / mu) / (eps * eps);
  if (!(v < 1e18)) fail(ErrorCode::CapExceeded, "sample count overflows");
  return static_cast<std::size_t>(std::ceil(v));
}

const char* mc_mode_name(McMode m) noexcept {
  return m == McMode::Expectation ? "expectation" : "bernoulli";
}

McMode parse_mc_mode(const std::string& name) {
  if (name == "expectation") return McMode::Expectation;
  if (name == "bernoulli") return McMode::Bernoulli;
  fail(ErrorCode::InvalidArgument, "unknown Monte-Carlo mode '" + name + "'");
}

std::pair<double, double> simulate_hadamard(const SpectralData& s, double t, McMode mode,
                                            std::uint64_t bits_x, std::uint64_t bits_y) {
  const complex l = exact_loschmidt(s, t);
  if (mode == McMode::Expectation) return {l.real(), l.imag()};
  // P(+1) = (1 + mean) / 2
  const double x = uniform_open01(bits_x) < 0.5 * (1.0 + l.real()) ? 1.0 : -1.0;
  const double y = uniform_open01(bits_y) < 0.5 * (1.0 + l.imag()) ? 1.0 : -1.0;
  return {x, y};
}

McSampleSet generate_samples(const SpectralData& s, double beta, double t_max, std::size_t count,
                             McMode mode, std::uint64_t seed) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "sample count must be at least 1");
  McSampleSet set;
  set.norm = cauchy_norm(beta, t_max);
  set.t_max = t_max;
  set.beta = beta;
  set.mode = mode;
  set.samples.resize(count);
  const double a = std::atan(t_max / beta);
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double u = uniform_open01(rng());
      const double t = std::clamp(beta * std::tan((2.0 * u - 1.0) * a), -t_max, t_max);
      const std::uint64_t bx = rng(), by = rng();
      const auto [x, y] = simulate_hadamard(s, t, mode, bx, by);
      set.samples[i] = {t, x, y};
    }
  });
  return set;
}

McEstimate estimate_Z(const McSampleSet& set, double x, std::size_t m_points, double mu) {
  if (set.samples.empty()) fail(ErrorCode::InvalidArgument, "empty sample set");
  complex acc = 0.0;
  for (const auto& smp : set.samples) acc += std::polar(1.0, smp.t * x) * complex{smp.x, smp.y};
  const double s = static_cast<double>(set.samples.size());
  McEstimate est;
  est.partition.value = set.norm / s * acc;
  est.partition.backend = Backend::HadamardMc;
  est.partition.order = set.samples.size();
  est.stat_err = set.norm * std::sqrt(std::log(4.0 * static_cast<double>(m_points) / mu) / s);
  est.tail_err = 1.0 - set.norm;
  est.partition.additive_error_bound = est.stat_err + est.tail_err;
  return est;
}

}  // namespace rqite
