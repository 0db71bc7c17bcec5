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

// types.hpp — Dense complex linear-algebra value types over small
// multi-factor Hilbert spaces.  Every object carries its ordered list of
// tensor-factor dimensions; the convention throughout is system factors
// first (qubit 1, qubit 2, ...), bath factors last.  All quantities are in
// natural units (hbar = 1): times and energies are dimensionless reals.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zenosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ---- numerical tolerances (single source of truth) ----

inline constexpr double kHermitianTol = 1e-12;  // max |A - A†| entry
inline constexpr double kUnitaryTol = 1e-10;    // max |U†U - I| entry
inline constexpr double kNormTol = 1e-10;       // | ||psi|| - 1 |
inline constexpr double kTraceTol = 1e-10;      // | tr(rho) - 1 |
inline constexpr double kPsdTol = -1e-9;        // smallest eigenvalue bound
inline constexpr double kLeakFloor = 1e-14;     // log-fit floor for leak values

// ---- helpers ----

inline int product_of(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
    p *= d;
  }
  return p;
}

// ---- Operator ----
// Dense complex square matrix with declared tensor-factor dimensions;
// carries Hamiltonians, projectors and propagators alike.

struct Operator {
  std::vector<int> dims;
  Matrix entries;

  Operator() = default;
  Operator(std::vector<int> d, Matrix m) : dims(std::move(d)), entries(std::move(m)) {
    const int n = product_of(dims);
    if (entries.rows() != entries.cols())
      throw std::invalid_argument("Operator: matrix must be square");
    if (entries.rows() != n)
      throw std::invalid_argument("Operator: size " + std::to_string(entries.rows()) +
                                  " does not match factor dimensions (product " +
                                  std::to_string(n) + ")");
  }

  int total_dim() const { return static_cast<int>(entries.rows()); }
};

inline double hermiticity_error(const Operator& a) {
  return (a.entries - a.entries.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Operator& a, double tol = kHermitianTol) {
  return hermiticity_error(a) <= tol;
}

inline double unitarity_error(const Operator& u) {
  const Matrix d = u.entries.adjoint() * u.entries - Matrix::Identity(u.total_dim(), u.total_dim());
  return d.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Operator& u, double tol = kUnitaryTol) {
  return unitarity_error(u) <= tol;
}

inline void require_hermitian(const Operator& a, const std::string& who) {
  if (!is_hermitian(a))
    throw std::invalid_argument(who + ": operator is not Hermitian (max |A - A†| = " +
                                std::to_string(hermiticity_error(a)) + ")");
}

// ---- PureState ----

struct PureState {
  std::vector<int> dims;
  Vector amplitudes;

  PureState() = default;
  PureState(std::vector<int> d, Vector v) : dims(std::move(d)), amplitudes(std::move(v)) {
    if (amplitudes.size() != product_of(dims))
      throw std::invalid_argument("PureState: length does not match factor dimensions");
  }

  int total_dim() const { return static_cast<int>(amplitudes.size()); }
  double norm_error() const { return std::abs(amplitudes.norm() - 1.0); }
};

inline void require_normalized(const PureState& s, const std::string& who) {
  if (s.norm_error() > kNormTol)
    throw std::invalid_argument(who + ": state norm deviates from 1 by " +
                                std::to_string(s.norm_error()));
}

// ---- DensityMatrix ----

struct DensityMatrix {
  std::vector<int> dims;
  Matrix entries;

  DensityMatrix() = default;
  DensityMatrix(std::vector<int> d, Matrix m) : dims(std::move(d)), entries(std::move(m)) {
    const int n = product_of(dims);
    if (entries.rows() != entries.cols() || entries.rows() != n)
      throw std::invalid_argument("DensityMatrix: size does not match factor dimensions");
  }

  int total_dim() const { return static_cast<int>(entries.rows()); }
  double trace_error() const { return std::abs(entries.trace() - Complex(1.0, 0.0)); }
};

inline DensityMatrix to_density(const PureState& s) {
  return DensityMatrix(s.dims, s.amplitudes * s.amplitudes.adjoint());
}

}  // namespace zenosim
