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

// ops.cpp — tensor-core implementation.

#include "zenosim/ops.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace zenosim::ops {

namespace {

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Big-endian strides: stride[i] = product of dims after i.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

}  // namespace

// ---- kron ----

Operator kron(const Operator& a, const Operator& b) {
  const int na = a.total_dim(), nb = b.total_dim();
  Matrix out(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.entries(i, j) * b.entries;
  return Operator(concat(a.dims, b.dims), std::move(out));
}

PureState kron(const PureState& a, const PureState& b) {
  const int na = a.total_dim(), nb = b.total_dim();
  Vector out(na * nb);
  for (int i = 0; i < na; ++i) out.segment(i * nb, nb) = a.amplitudes(i) * b.amplitudes;
  return PureState(concat(a.dims, b.dims), std::move(out));
}

// ---- embed ----

Operator embed(const Operator& op, const std::vector<int>& where, const std::vector<int>& dims) {
  const int nf = static_cast<int>(dims.size());
  if (where.empty()) throw std::invalid_argument("embed: empty factor list");
  if (!std::is_sorted(where.begin(), where.end()) ||
      std::adjacent_find(where.begin(), where.end()) != where.end())
    throw std::invalid_argument("embed: factor list must be strictly ascending");
  if (where.front() < 0 || where.back() >= nf)
    throw std::invalid_argument("embed: factor index out of range");
  if (op.dims.size() != where.size())
    throw std::invalid_argument("embed: operator factor count does not match placement list");
  for (size_t k = 0; k < where.size(); ++k)
    if (op.dims[k] != dims[where[k]])
      throw std::invalid_argument("embed: operator dimension mismatch at factor " +
                                  std::to_string(where[k]));

  const std::vector<int> strides = strides_of(dims);
  std::vector<int> rest;
  for (int f = 0; f < nf; ++f)
    if (!std::binary_search(where.begin(), where.end(), f)) rest.push_back(f);

  const int dsel = op.total_dim();
  int drest = 1;
  for (int f : rest) drest *= dims[f];

  // Offset of a selected multi-index within the global index.
  const std::vector<int> op_strides = strides_of(op.dims);
  auto sel_offset = [&](int sel) {
    int off = 0;
    for (size_t k = 0; k < where.size(); ++k) {
      const int digit = (sel / op_strides[k]) % op.dims[k];
      off += digit * strides[where[k]];
    }
    return off;
  };
  std::vector<int> rest_strides(rest.size(), 1);
  {
    int run = 1;
    for (int k = static_cast<int>(rest.size()) - 1; k >= 0; --k) {
      rest_strides[k] = run;
      run *= dims[rest[k]];
    }
  }
  auto rest_offset = [&](int r) {
    int off = 0;
    for (size_t k = 0; k < rest.size(); ++k) {
      const int digit = (r / rest_strides[k]) % dims[rest[k]];
      off += digit * strides[rest[k]];
    }
    return off;
  };

  const int n = product_of(dims);
  Matrix out = Matrix::Zero(n, n);
  std::vector<int> sel_off(dsel);
  for (int s = 0; s < dsel; ++s) sel_off[s] = sel_offset(s);
  for (int r = 0; r < drest; ++r) {
    const int ro = rest_offset(r);
    for (int i = 0; i < dsel; ++i)
      for (int j = 0; j < dsel; ++j) {
        const Complex v = op.entries(i, j);
        if (v != Complex(0, 0)) out(sel_off[i] + ro, sel_off[j] + ro) = v;
      }
  }
  return Operator(dims, std::move(out));
}

// ---- propagator ----

Operator propagator(const Operator& h, double t) {
  require_hermitian(h, "propagator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("propagator: eigendecomposition failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();
  Vector phases(evals.size());
  for (int k = 0; k < evals.size(); ++k)
    phases(k) = std::exp(Complex(0, -evals(k) * t));
  return Operator(h.dims, v * phases.asDiagonal() * v.adjoint());
}

// ---- apply ----

PureState apply(const Operator& u, const PureState& s) {
  if (u.total_dim() != s.total_dim())
    throw std::invalid_argument("apply: dimension mismatch");
  return PureState(s.dims, u.entries * s.amplitudes);
}

DensityMatrix apply(const Operator& u, const DensityMatrix& rho) {
  if (u.total_dim() != rho.total_dim())
    throw std::invalid_argument("apply: dimension mismatch");
  return DensityMatrix(rho.dims, u.entries * rho.entries * u.entries.adjoint());
}

DensityMatrix conjugate(const Operator& m, const DensityMatrix& rho) {
  if (m.total_dim() != rho.total_dim())
    throw std::invalid_argument("conjugate: dimension mismatch");
  return DensityMatrix(rho.dims, m.entries * rho.entries * m.entries.adjoint());
}

// ---- partial_trace ----

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int nf = static_cast<int>(rho.dims.size());
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: keep set must be strictly ascending");
  if (keep.front() < 0 || keep.back() >= nf)
    throw std::invalid_argument("partial_trace: factor index out of range");

  const std::vector<int> strides = strides_of(rho.dims);
  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);

  std::vector<int> keep_dims;
  for (int f : keep) keep_dims.push_back(rho.dims[f]);
  const int dkeep = product_of(keep_dims);
  int dtr = 1;
  for (int f : traced) dtr *= rho.dims[f];

  const std::vector<int> keep_strides_local = strides_of(keep_dims);
  auto keep_offset = [&](int k) {
    int off = 0;
    for (size_t p = 0; p < keep.size(); ++p) {
      const int digit = (k / keep_strides_local[p]) % keep_dims[p];
      off += digit * strides[keep[p]];
    }
    return off;
  };
  std::vector<int> tr_strides(traced.size(), 1);
  {
    int run = 1;
    for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
      tr_strides[k] = run;
      run *= rho.dims[traced[k]];
    }
  }
  auto tr_offset = [&](int r) {
    int off = 0;
    for (size_t p = 0; p < traced.size(); ++p) {
      const int digit = (r / tr_strides[p]) % rho.dims[traced[p]];
      off += digit * strides[traced[p]];
    }
    return off;
  };

  std::vector<int> ko(dkeep);
  for (int k = 0; k < dkeep; ++k) ko[k] = keep_offset(k);
  Matrix out = Matrix::Zero(dkeep, dkeep);
  for (int r = 0; r < dtr; ++r) {
    const int ro = tr_offset(r);
    for (int i = 0; i < dkeep; ++i)
      for (int j = 0; j < dkeep; ++j) out(i, j) += rho.entries(ko[i] + ro, ko[j] + ro);
  }
  return DensityMatrix(keep_dims, std::move(out));
}

// ---- fidelity ----

double fidelity(const PureState& target, const DensityMatrix& rho) {
  if (target.total_dim() != rho.total_dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex v = target.amplitudes.adjoint() * rho.entries * target.amplitudes;
  return v.real();
}

double fidelity(const PureState& target, const PureState& s) {
  if (target.total_dim() != s.total_dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex ov = target.amplitudes.adjoint() * s.amplitudes;
  return std::norm(ov);
}

// ---- expectation ----

double real_expectation(const Operator& a, const DensityMatrix& rho) {
  if (a.total_dim() != rho.total_dim())
    throw std::invalid_argument("real_expectation: dimension mismatch");
  return (a.entries * rho.entries).trace().real();
}

double real_expectation(const Operator& a, const PureState& s) {
  if (a.total_dim() != s.total_dim())
    throw std::invalid_argument("real_expectation: dimension mismatch");
  const Complex v = s.amplitudes.adjoint() * (a.entries * s.amplitudes);
  return v.real();
}

}  // namespace zenosim::ops
