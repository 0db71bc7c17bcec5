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

// ops.hpp — Tensor-core operations: Kronecker products, Hermitian
// propagators, state application, factor embedding, partial traces and
// fidelities.  All functions are pure; inputs are never mutated.
//
// Conventions: basis ordering |0> = (1,0)^T; ladder operator sigma_plus
// raises the bit value, sigma_plus|0> = |1>, sigma_plus|1> = 0.  Composite
// indices are big-endian in the factor list: for dims {d0, d1}, global index
// = i0*d1 + i1, so kron(A, B) applies A to factor 0.

#pragma once

#include "zenosim/types.hpp"

namespace zenosim::ops {

// ---- elementary operators ----

inline Operator identity(const std::vector<int>& dims) {
  const int n = product_of(dims);
  return Operator(dims, Matrix::Identity(n, n));
}

inline Operator sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator({2}, m);
}

inline Operator sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator({2}, m);
}

inline Operator sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator({2}, m);
}

// sigma_plus |0> = |1>  (bit-raising convention; see file header)
inline Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return Operator({2}, m);
}

inline Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return Operator({2}, m);
}

// Computational basis vector |k> in a d-level factor.
inline PureState basis_state(int d, int k) {
  if (k < 0 || k >= d) throw std::invalid_argument("basis_state: index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1;
  return PureState({d}, v);
}

// ---- kron ----
// Kronecker product; output factor list is the concatenation of the inputs'.

Operator kron(const Operator& a, const Operator& b);
PureState kron(const PureState& a, const PureState& b);

// ---- embed ----
// Places `op` on the (ascending) factor positions `where` of a space with
// factor dimensions `dims`, identity elsewhere.  op.dims must match the
// selected dimensions in order.

Operator embed(const Operator& op, const std::vector<int>& where, const std::vector<int>& dims);

// ---- propagator ----
// U = exp(-i h t), computed by eigendecomposition of the Hermitian input
// (exact for Hermitian h; rejects non-Hermitian input, which signals a
// model-construction bug upstream).

Operator propagator(const Operator& h, double t);

// ---- apply ----

PureState apply(const Operator& u, const PureState& s);
DensityMatrix apply(const Operator& u, const DensityMatrix& rho);  // u rho u†

// Sandwich with a (possibly non-unitary) operator without renormalizing:
// returns m rho m†.  Used for projective branches.
DensityMatrix conjugate(const Operator& m, const DensityMatrix& rho);

// ---- partial_trace ----
// Reduced density matrix over the kept factors (ascending index list).

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// ---- fidelity ----
// <target| rho |target>, real in [0,1] up to numerical noise.

double fidelity(const PureState& target, const DensityMatrix& rho);
double fidelity(const PureState& target, const PureState& s);  // |<target|s>|^2

// ---- expectation ----

double real_expectation(const Operator& a, const DensityMatrix& rho);  // Re tr(a rho)
double real_expectation(const Operator& a, const PureState& s);        // Re <s|a|s>

}  // namespace zenosim::ops
