// Copyright 2026 The zenosim Authors
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

// oracles.hpp — independent reference implementations and frozen constants
// used by the test suite.  Everything here is computed by a different method
// than the library under test (Taylor series instead of eigendecomposition,
// closed-form perturbation theory instead of simulation, hand-expanded
// codewords instead of encoder calls).

#pragma once

#include "zenosim/rng.hpp"
#include "zenosim/types.hpp"

#include <cmath>
#include <vector>

namespace oracles {

using zenosim::Complex;
using zenosim::Matrix;
using zenosim::Vector;

// ---- matrix exponential by scaling-and-squaring Taylor series ----
// Independent oracle for ops::propagator (which diagonalizes instead).

inline Matrix expm_taylor(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  // Scale so the series converges fast, then square back.
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  Matrix x = a * scale;
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// U(t) = exp(-i H t)
inline Matrix propagator_taylor(const Matrix& h, double t) {
  return expm_taylor(Complex(0.0, -1.0) * t * h);
}

// ---- first-order leakage amplitude ----
// One short step of the exchange coupling moves |t (l1 b + l2 a)|^2 *
// ||V+ psi_b||^2 of weight out of the code space, to leading order in t.
// (With equal couplings the assignment of l1/l2 to the two qubits is
// immaterial; the pinned check below uses equal couplings.)

inline double first_order_leak(double t, Complex l1, Complex l2, Complex alpha, Complex beta,
                               double vplus_psi_norm_sq) {
  return std::norm(t * (l1 * beta + l2 * alpha)) * vplus_psi_norm_sq;
}

// ---- frozen codeword expansions ----
// Repetition codeword over three two-qubit blocks, expanded by hand: the
// eight nonzero amplitudes sit at the basis states whose blocks are all in
// {|01>, |10>}, with value (alpha + (-1)^{#|10> blocks} beta) / sqrt(8).

struct CodewordEntry {
  int index;
  int n_flips;  // number of |10> blocks
};

inline const std::vector<CodewordEntry>& qecc3_support() {
  // index = sum over blocks of (16,32)/(4,8)/(1,2) for |01>/|10>.
  static const std::vector<CodewordEntry> kSupport = {
      {21, 0}, {22, 1}, {25, 1}, {26, 2}, {37, 1}, {38, 2}, {41, 2}, {42, 3}};
  return kSupport;
}

inline Vector qecc3_codeword(Complex alpha, Complex beta) {
  Vector v = Vector::Zero(64);
  const double w = 1.0 / std::sqrt(8.0);
  for (const auto& e : qecc3_support())
    v(e.index) = w * (alpha + (e.n_flips % 2 == 0 ? beta : -beta));
  return v;
}

// Two-block detection codeword: support {5, 6, 9, 10}, same sign rule.
inline const std::vector<CodewordEntry>& detect2_support() {
  static const std::vector<CodewordEntry> kSupport = {{5, 0}, {6, 1}, {9, 1}, {10, 2}};
  return kSupport;
}

inline Vector detect2_codeword(Complex alpha, Complex beta) {
  Vector v = Vector::Zero(16);
  const double w = 0.5;
  for (const auto& e : detect2_support())
    v(e.index) = w * (alpha + (e.n_flips % 2 == 0 ? beta : -beta));
  return v;
}

// Duan-Guo codeword: alpha |0_ 1_> + beta |1_ 0_| with |0_> = (|0>+|1>)/sqrt(2),
// |1_> = (|0>-|1>)/sqrt(2).  Expanded by hand over the two-qubit basis:
//   |0_ 1_> = (1, -1, 1, -1)/2,   |1_ 0_> = (1, 1, -1, -1)/2.
inline Vector duan_guo_codeword(Complex alpha, Complex beta) {
  Vector v(4);
  v(0) = 0.5 * (alpha + beta);
  v(1) = 0.5 * (-alpha + beta);
  v(2) = 0.5 * (alpha - beta);
  v(3) = 0.5 * (-alpha - beta);
  return v;
}

// ---- deterministic random inputs ----

inline double normal01(std::mt19937_64& gen) {
  const double u1 = std::max(zenosim::rng::uniform01(gen), 1e-300);
  const double u2 = zenosim::rng::uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Vector random_state(int dim, std::mt19937_64& gen) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal01(gen), normal01(gen));
  return v / v.norm();
}

inline Matrix random_hermitian(int dim, std::mt19937_64& gen) {
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex z(normal01(gen), i == j ? 0.0 : normal01(gen));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

}  // namespace oracles
