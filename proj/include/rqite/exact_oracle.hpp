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

#include <Eigen/Dense>

#include "rqite/hamiltonian.hpp"

namespace rqite {

/// Dense matrix of H in the computational basis; qubit q is bit q of the
/// basis index. Raises CapExceeded above the oracle qubit cap.
Eigen::MatrixXcd dense_matrix(const LocalHamiltonian& h);

/// Dense amplitude vector of a semi-classical state (same bit convention).
Eigen::VectorXcd dense_state(const SemiClassicalState& psi);

/// Eigen-decomposition data of H together with the overlaps of one state.
struct SpectralData {
  std::vector<double> eigenvalues;  // ascending
  /// c_j = <psi_j|psi>; p_j = |c_j|^2.
  std::vector<complex> amplitudes;
  std::vector<double> weights;
  double e0 = 0.0;
  /// Distance to the first eigenvalue above E_0 + 1e-9 ||H|| (0 when none).
  double gap = 0.0;
  /// Total weight on the ground eigenspace.
  double p0 = 0.0;
  std::size_t ground_degeneracy = 1;
  /// Spectral norm max |E_j|.
  double norm = 0.0;
};

SpectralData spectrum(const LocalHamiltonian& h, const SemiClassicalState& psi);
SpectralData spectrum(const LocalHamiltonian& h, const Eigen::VectorXcd& psi);

/// Spectral norm from the dense eigenvalues.
double spectral_norm(const LocalHamiltonian& h);

/// sum_j p_j e^{-b (E_j - x)}.
complex exact_partition(const SpectralData& s, double shift, complex beta);
complex exact_partition(const LocalHamiltonian& h, double shift, complex beta, const SemiClassicalState& psi);

/// D_b(H - x) - D_2b(H - x) for real b > 0.
double exact_residue(const SpectralData& s, double shift, double beta);
double exact_residue(const LocalHamiltonian& h, double shift, double beta, const SemiClassicalState& psi);

/// sum_j p_j e^{-i E_j t}.
complex exact_loschmidt(const SpectralData& s, double t);
complex exact_loschmidt(const LocalHamiltonian& h, double t, const SemiClassicalState& psi);

struct ZeroFreeGrid {
  double re_min = 0.01, re_max = 5.0;
  double im_max = 5.0;
  std::size_t re_points = 100, im_points = 201;
};

struct ZeroFreeScan {
  double min_modulus;
  complex argmin;
  /// 2 p_0 - 1, the lower bound expected when p_0 > 1/2.
  double bound;
  bool bound_holds;
};

/// Grid minimum of |sum_j p_j e^{-b (E_j - E_0)}| over the rectangle.
ZeroFreeScan zero_free_scan(const SpectralData& s, const ZeroFreeGrid& grid = {});
ZeroFreeScan zero_free_scan(const std::vector<double>& energies, const std::vector<double>& weights,
                            const ZeroFreeGrid& grid = {});

}  // namespace rqite
