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

#include "rqite/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include <lapacke.h>

#include "rqite/error.hpp"
#include "rqite/limits.hpp"

namespace rqite {
namespace {

void check_size(std::size_t n) {
  const int cap = limits().oracle_max_qubits;
  if (n > static_cast<std::size_t>(cap))
    fail(ErrorCode::CapExceeded,
         std::to_string(n) + " qubits exceeds the dense oracle cap of " + std::to_string(cap));
}

bool is_real(const LocalHamiltonian& h) {
  for (const auto& t : h.terms()) {
    std::size_t ys = 0;
    for (const auto& f : t.op.factors()) ys += f.second == Pauli::Y;
    if (ys % 2) return false;
  }
  return true;
}

// P|b> = phase(b) |b ^ x_mask>
complex pauli_phase(std::uint64_t b, std::uint64_t z_mask, std::size_t n_y) {
  static const complex ipow[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  const complex base = ipow[n_y % 4];
  return (std::popcount(b & z_mask) & 1) ? -base : base;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const LocalHamiltonian& h) {
  const std::size_t n = h.n_qubits();
  check_size(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    const auto xm = t.op.x_mask(), zm = t.op.z_mask();
    std::size_t ny = 0;
    for (const auto& f : t.op.factors()) ny += f.second == Pauli::Y;
    for (std::uint64_t b = 0; b < dim; ++b)
      m(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) += t.coefficient * pauli_phase(b, zm, ny);
  }
  return m;
}

Eigen::VectorXcd dense_state(const SemiClassicalState& psi) {
  const std::size_t n = psi.n_qubits();
  check_size(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& c : psi.components()) {
    std::vector<complex> prod{c.amplitude};
    for (std::size_t q = 0; q < n; ++q) {
      // bit q of the index is qubit q: append as the new most significant bit
      const auto& a = c.state.qubit(q);
      std::vector<complex> next(prod.size() * 2);
      for (std::size_t i = 0; i < prod.size(); ++i) {
        next[i] = prod[i] * a[0];
        next[i + prod.size()] = prod[i] * a[1];
      }
      prod = std::move(next);
    }
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) += prod[i];
  }
  return v;
}

namespace {

// Dense Hermitian eigensolver (LAPACK MRRR driver). When psi is given, also
// returns the eigenbasis coefficients of psi.
Eigen::VectorXd eigh(const Eigen::MatrixXcd& m, bool real, const Eigen::VectorXcd* psi, Eigen::VectorXcd* coeffs) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  const char job = psi ? 'V' : 'N';
  Eigen::VectorXd evals(n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0, info;
  if (real) {
    Eigen::MatrixXd a = m.real(), z(n, psi ? n : 1);
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, job, 'A', 'L', n, a.data(), n, 0.0, 0.0, 0, 0, 0.0, &found, evals.data(),
                          z.data(), n, support.data());
    if (psi && info == 0) *coeffs = z.cast<complex>().adjoint() * *psi;
  } else {
    Eigen::MatrixXcd a = m, z(n, psi ? n : 1);
    info = LAPACKE_zheevr(LAPACK_COL_MAJOR, job, 'A', 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                          0.0, 0.0, 0, 0, 0.0, &found, evals.data(),
                          reinterpret_cast<lapack_complex_double*>(z.data()), n, support.data());
    if (psi && info == 0) *coeffs = z.adjoint() * *psi;
  }
  if (info != 0 || found != n) fail(ErrorCode::Internal, "eigensolver did not converge");
  return evals;
}

}  // namespace

SpectralData spectrum(const LocalHamiltonian& h, const Eigen::VectorXcd& psi) {
  const Eigen::MatrixXcd m = dense_matrix(h);
  if (psi.size() != m.rows()) fail(ErrorCode::InvalidArgument, "state dimension does not match Hamiltonian");
  Eigen::VectorXcd coeffs;
  const Eigen::VectorXd evals = eigh(m, is_real(h), &psi, &coeffs);

  SpectralData s;
  const auto dim = static_cast<std::size_t>(evals.size());
  s.eigenvalues.assign(evals.data(), evals.data() + dim);
  s.amplitudes.assign(coeffs.data(), coeffs.data() + dim);
  s.weights.resize(dim);
  double total = 0.0;
  for (std::size_t j = 0; j < dim; ++j) total += s.weights[j] = std::norm(s.amplitudes[j]);
  // A non-orthonormal eigenbasis shows up as lost or gained weight.
  if (std::abs(total - psi.squaredNorm()) > 1e-8 * std::max(1.0, psi.squaredNorm()))
    fail(ErrorCode::Internal, "eigenbasis is not orthonormal");
  s.e0 = s.eigenvalues.front();
  s.norm = std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
  const double tol = 1e-9 * std::max(s.norm, 1e-300);
  s.p0 = 0.0;
  s.ground_degeneracy = 0;
  s.gap = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (s.eigenvalues[j] <= s.e0 + tol) {
      s.p0 += s.weights[j];
      ++s.ground_degeneracy;
    } else {
      s.gap = s.eigenvalues[j] - s.e0;
      break;
    }
  }
  return s;
}

SpectralData spectrum(const LocalHamiltonian& h, const SemiClassicalState& psi) {
  if (psi.n_qubits() != h.n_qubits())
    fail(ErrorCode::InvalidArgument, "state and Hamiltonian have different qubit counts");
  return spectrum(h, dense_state(psi));
}

double spectral_norm(const LocalHamiltonian& h) {
  const Eigen::MatrixXcd m = dense_matrix(h);
  const Eigen::VectorXd evals = eigh(m, is_real(h), nullptr, nullptr);
  return std::max(std::abs(evals(0)), std::abs(evals(evals.size() - 1)));
}

NormalizedHamiltonian normalize_hamiltonian(const LocalHamiltonian& h, NormalizeMode mode) {
  const double scale = mode == NormalizeMode::Exact ? spectral_norm(h) : h.coefficient_one_norm();
  if (!(scale > 0.0)) fail(ErrorCode::InvalidArgument, "cannot normalise a zero Hamiltonian");
  return {h.scaled(1.0 / scale), scale};
}

complex exact_partition(const SpectralData& s, double shift, complex beta) {
  complex acc = 0.0;
  for (std::size_t j = 0; j < s.eigenvalues.size(); ++j)
    if (s.weights[j] != 0.0) acc += s.weights[j] * std::exp(-beta * (s.eigenvalues[j] - shift));
  return acc;
}

complex exact_partition(const LocalHamiltonian& h, double shift, complex beta, const SemiClassicalState& psi) {
  return exact_partition(spectrum(h, psi), shift, beta);
}

double exact_residue(const SpectralData& s, double shift, double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "residue needs beta > 0");
  double acc = 0.0;
  for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
    const double u = beta * (s.eigenvalues[j] - shift);
    // e^{-u} - e^{-2u} = e^{-u} (1 - e^{-u})
    acc += s.weights[j] * std::exp(-u) * -std::expm1(-u);
  }
  return acc;
}

double exact_residue(const LocalHamiltonian& h, double shift, double beta, const SemiClassicalState& psi) {
  return exact_residue(spectrum(h, psi), shift, beta);
}

complex exact_loschmidt(const SpectralData& s, double t) {
  complex acc = 0.0;
  for (std::size_t j = 0; j < s.eigenvalues.size(); ++j)
    acc += s.weights[j] * std::polar(1.0, -s.eigenvalues[j] * t);
  return acc;
}

complex exact_loschmidt(const LocalHamiltonian& h, double t, const SemiClassicalState& psi) {
  return exact_loschmidt(spectrum(h, psi), t);
}

ZeroFreeScan zero_free_scan(const std::vector<double>& energies, const std::vector<double>& weights,
                            const ZeroFreeGrid& grid) {
  if (!(grid.re_min > 0.0)) fail(ErrorCode::InvalidArgument, "zero-free grid must have Re beta > 0");
  if (energies.empty() || energies.size() != weights.size())
    fail(ErrorCode::InvalidArgument, "energies and weights must be non-empty and of equal length");
  if (grid.re_points < 1 || grid.im_points < 1) fail(ErrorCode::InvalidArgument, "empty grid");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  double scale = 0.0;
  for (double e : energies) scale = std::max(scale, std::abs(e));
  double p0 = 0.0;
  for (std::size_t j = 0; j < energies.size(); ++j)
    if (energies[j] <= e0 + 1e-9 * std::max(scale, 1e-300)) p0 += weights[j];

  ZeroFreeScan out{std::numeric_limits<double>::infinity(), 0.0, 2.0 * p0 - 1.0, true};
  for (std::size_t a = 0; a < grid.re_points; ++a) {
    const double re = grid.re_points == 1 ? grid.re_min
                                          : grid.re_min + (grid.re_max - grid.re_min) * static_cast<double>(a) /
                                                              static_cast<double>(grid.re_points - 1);
    for (std::size_t b = 0; b < grid.im_points; ++b) {
      const double im = grid.im_points == 1 ? 0.0
                                            : -grid.im_max + 2.0 * grid.im_max * static_cast<double>(b) /
                                                                 static_cast<double>(grid.im_points - 1);
      const complex beta{re, im};
      complex acc = 0.0;
      for (std::size_t j = 0; j < energies.size(); ++j)
        if (weights[j] != 0.0) acc += weights[j] * std::exp(-beta * (energies[j] - e0));
      const double mod = std::abs(acc);
      if (mod < out.min_modulus) {
        out.min_modulus = mod;
        out.argmin = beta;
      }
    }
  }
  out.bound_holds = p0 <= 0.5 || out.min_modulus >= out.bound - 1e-9;
  return out;
}

ZeroFreeScan zero_free_scan(const SpectralData& s, const ZeroFreeGrid& grid) {
  return zero_free_scan(s.eigenvalues, s.weights, grid);
}

}  // namespace rqite
