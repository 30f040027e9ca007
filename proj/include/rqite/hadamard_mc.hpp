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
#include <cstdint>
#include <string>
#include <vector>

#include "rqite/exact_oracle.hpp"
#include "rqite/expansion.hpp"

namespace rqite {

/// (2/pi) arctan(T/beta), the mass of the Cauchy density kept by truncation.
double cauchy_norm(double beta, double t_max);

/// T = beta tan(pi (1 - eps_t) / 2), so that 1 - cauchy_norm = eps_t.
double truncation_time(double beta, double eps_t);

/// Uniform double in (0, 1) from 53 random bits; identical on every platform.
double uniform_open01(std::uint64_t bits) noexcept;

/// Seed for stream `stream` derived from `seed` (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// i.i.d. draws from the Cauchy density of width beta truncated to [-T, T]:
/// t = beta tan((2u - 1) arctan(T/beta)). The stream depends only on `seed`,
/// not on the worker count.
std::vector<double> sample_times(double beta, double t_max, std::size_t count, std::uint64_t seed);

/// ceil(norm^2 ln(4 M / mu) / eps^2).
std::size_t sample_count(double norm, double eps, std::size_t m_points, double mu);

enum class McMode { Expectation, Bernoulli };

const char* mc_mode_name(McMode m) noexcept;
McMode parse_mc_mode(const std::string& name);

struct McSample {
  double t, x, y;
};

struct McSampleSet {
  std::vector<McSample> samples;
  double norm = 0.0;
  double t_max = 0.0;
  double beta = 0.0;
  McMode mode = McMode::Expectation;
};

/// One Hadamard-test outcome pair at time t. Expectation mode returns
/// (Re L, Im L) with L = <psi|e^{-iHt}|psi>; Bernoulli mode draws two +-1
/// outcomes with those means using `rng_bits` (two 64-bit words).
std::pair<double, double> simulate_hadamard(const SpectralData& s, double t, McMode mode,
                                            std::uint64_t bits_x, std::uint64_t bits_y);

/// Draws `count` times and simulates the Hadamard test at each.
McSampleSet generate_samples(const SpectralData& s, double beta, double t_max, std::size_t count,
                             McMode mode, std::uint64_t seed);

struct McEstimate {
  PartitionEstimate partition;
  /// Statistical radius implied by sample_count for the given (M, mu).
  double stat_err;
  /// Truncation tail 1 - norm.
  double tail_err;
};

/// Zbar(x) = (norm / S) sum_i e^{i t_i x} (X_i + i Y_i).
McEstimate estimate_Z(const McSampleSet& samples, double x, std::size_t m_points = 1, double mu = 0.05);

}  // namespace rqite
