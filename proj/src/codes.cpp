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

// codes.cpp — encodings, decoders, block operators, syndrome logic.

#include "zenosim/codes.hpp"

#include "zenosim/rng.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>

namespace zenosim::codes {

using ops::embed;
using ops::kron;
using ops::sigma_x;
using ops::sigma_z;

void require_normalized(const LogicalQubit& q) {
  if (q.norm_error() > 1e-12)
    throw std::invalid_argument("LogicalQubit: |alpha|^2 + |beta|^2 deviates from 1 by " +
                                std::to_string(q.norm_error()));
}

// ---- scheme layouts ----

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::BARE: return "BARE";
    case Scheme::DFS: return "DFS";
    case Scheme::DFS_ZENO: return "DFS_ZENO";
    case Scheme::DFS_ZENO_X_QECC3: return "DFS_ZENO_X_QECC3";
    case Scheme::DFS_ZENO_X_DETECT2_ZENO: return "DFS_ZENO_X_DETECT2_ZENO";
    case Scheme::DUAN_GUO: return "DUAN_GUO";
  }
  throw std::logic_error("scheme_name: unreachable");
}

Scheme scheme_from_name(const std::string& name) {
  for (Scheme s : {Scheme::BARE, Scheme::DFS, Scheme::DFS_ZENO, Scheme::DFS_ZENO_X_QECC3,
                   Scheme::DFS_ZENO_X_DETECT2_ZENO, Scheme::DUAN_GUO})
    if (name == scheme_name(s)) return s;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

int qubit_cost(Scheme s) {
  switch (s) {
    case Scheme::BARE: return 1;
    case Scheme::DFS: return 2;
    case Scheme::DFS_ZENO: return 2;
    case Scheme::DFS_ZENO_X_QECC3: return 6;
    case Scheme::DFS_ZENO_X_DETECT2_ZENO: return 4;
    case Scheme::DUAN_GUO: return 2;
  }
  throw std::logic_error("qubit_cost: unreachable");
}

CodeLayout CodeLayout::for_scheme(Scheme s) {
  CodeLayout out;
  out.scheme = s;
  switch (s) {
    case Scheme::BARE:
      out.n_physical = 1;
      out.n_blocks = 0;
      break;
    case Scheme::DFS:
    case Scheme::DFS_ZENO:
      out.n_physical = 2;
      out.n_blocks = 1;
      out.block_map = {{0, 1}};
      break;
    case Scheme::DFS_ZENO_X_QECC3:
      out.n_physical = 6;
      out.n_blocks = 3;
      out.block_map = {{0, 1}, {2, 3}, {4, 5}};
      break;
    case Scheme::DFS_ZENO_X_DETECT2_ZENO:
      out.n_physical = 4;
      out.n_blocks = 2;
      out.block_map = {{0, 1}, {2, 3}};
      break;
    case Scheme::DUAN_GUO:
      out.n_physical = 2;
      out.n_blocks = 0;  // no DFS block; its code space is not Span{|01>,|10>}
      break;
  }
  return out;
}

const char* outcome_name(SyndromeResult::Outcome o) {
  switch (o) {
    case SyndromeResult::Outcome::no_error: return "no-error";
    case SyndromeResult::Outcome::z_on_block_1: return "Z-on-block-1";
    case SyndromeResult::Outcome::z_on_block_2: return "Z-on-block-2";
    case SyndromeResult::Outcome::z_on_block_3: return "Z-on-block-3";
    case SyndromeResult::Outcome::pass: return "pass";
    case SyndromeResult::Outcome::error_detected: return "error-detected";
  }
  throw std::logic_error("outcome_name: unreachable");
}

// ---- DFS ----

PureState dfs_encode(const LogicalQubit& q) {
  require_normalized(q);
  Vector v = Vector::Zero(4);
  v(1) = q.alpha;  // |01>
  v(2) = q.beta;   // |10>
  return PureState({2, 2}, std::move(v));
}

namespace {

constexpr double kDefinedFloor = 1e-15;

DfsDecode decode_from_two_qubit_rho(const Matrix& rho) {
  DfsDecode out;
  const double w = std::real(rho(1, 1) + rho(2, 2));
  out.leak_weight = 1.0 - w;
  if (w <= kDefinedFloor) {
    out.logical_defined = false;
    out.logical_rho.setZero();
    out.logical = {Complex(0, 0), Complex(0, 0)};
    return out;
  }
  Eigen::Matrix2cd lr;
  lr << rho(1, 1), rho(1, 2), rho(2, 1), rho(2, 2);
  lr /= w;
  out.logical_rho = lr;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(lr);
  const Eigen::Vector2cd dominant = solver.eigenvectors().col(1);  // largest eigenvalue
  out.logical = {dominant(0), dominant(1)};
  return out;
}

}  // namespace

DfsDecode dfs_decode(const PureState& s) {
  if (s.dims.size() == 2 && s.dims[0] == 2 && s.dims[1] == 2) {
    DfsDecode out;
    const Complex a = s.amplitudes(1), b = s.amplitudes(2);
    const double w = std::norm(a) + std::norm(b);
    out.leak_weight = 1.0 - w;
    if (w <= kDefinedFloor) {
      out.logical_defined = false;
      out.logical_rho.setZero();
      out.logical = {Complex(0, 0), Complex(0, 0)};
      return out;
    }
    const double r = std::sqrt(w);
    out.logical = {a / r, b / r};
    Eigen::Vector2cd v(out.logical.alpha, out.logical.beta);
    out.logical_rho = v * v.adjoint();
    return out;
  }
  return dfs_decode(to_density(s));
}

DfsDecode dfs_decode(const DensityMatrix& s) {
  if (s.dims.size() < 2 || s.dims[0] != 2 || s.dims[1] != 2)
    throw std::invalid_argument("dfs_decode: first two factors must be qubits");
  if (s.dims.size() == 2) return decode_from_two_qubit_rho(s.entries);
  const DensityMatrix reduced = ops::partial_trace(s, {0, 1});
  return decode_from_two_qubit_rho(reduced.entries);
}

// ---- outer code encodings ----

namespace {

PureState block_plus() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return PureState({2, 2}, std::move(v));
}

PureState block_minus() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return PureState({2, 2}, std::move(v));
}

PureState repeated_blocks(const PureState& blk, int n) {
  PureState out = blk;
  for (int k = 1; k < n; ++k) out = kron(out, blk);
  return out;
}

}  // namespace

PureState qecc3_encode(const LogicalQubit& q) {
  require_normalized(q);
  const PureState p3 = repeated_blocks(block_plus(), 3);
  const PureState m3 = repeated_blocks(block_minus(), 3);
  Vector v = q.alpha * p3.amplitudes + q.beta * m3.amplitudes;
  return PureState(p3.dims, std::move(v));
}

PureState detect2_encode(const LogicalQubit& q) {
  require_normalized(q);
  const PureState p2 = repeated_blocks(block_plus(), 2);
  const PureState m2 = repeated_blocks(block_minus(), 2);
  Vector v = q.alpha * p2.amplitudes + q.beta * m2.amplitudes;
  return PureState(p2.dims, std::move(v));
}

PureState duan_guo_encode(const LogicalQubit& q) {
  require_normalized(q);
  // |0_> = (|0>+|1>)/sqrt(2), |1_> = (|0>-|1>)/sqrt(2); encode in
  // Span{|0_1_>, |1_0_>}.
  Vector zero_bar(2), one_bar(2);
  zero_bar << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  one_bar << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      v(2 * i + j) = q.alpha * zero_bar(i) * one_bar(j) + q.beta * one_bar(i) * zero_bar(j);
  return PureState({2, 2}, std::move(v));
}

PureState encode(const CodeLayout& layout, const LogicalQubit& q) {
  switch (layout.scheme) {
    case Scheme::BARE: {
      require_normalized(q);
      Vector v(2);
      v << q.alpha, q.beta;
      return PureState({2}, std::move(v));
    }
    case Scheme::DFS:
    case Scheme::DFS_ZENO:
      return dfs_encode(q);
    case Scheme::DFS_ZENO_X_QECC3:
      return qecc3_encode(q);
    case Scheme::DFS_ZENO_X_DETECT2_ZENO:
      return detect2_encode(q);
    case Scheme::DUAN_GUO:
      return duan_guo_encode(q);
  }
  throw std::logic_error("encode: unreachable");
}

// ---- block operators ----

namespace {

void require_qubit_block(int block, const std::vector<int>& dims) {
  const int q2 = 2 * block + 1;
  if (block < 0 || q2 >= static_cast<int>(dims.size()))
    throw std::invalid_argument("block index out of range");
  if (dims[2 * block] != 2 || dims[q2] != 2)
    throw std::invalid_argument("block factors must be qubits");
}

}  // namespace

Operator logical_z(int block, const std::vector<int>& dims) {
  require_qubit_block(block, dims);
  return embed(sigma_z(), {2 * block}, dims);
}

Operator block_xx(int block, const std::vector<int>& dims) {
  require_qubit_block(block, dims);
  return embed(kron(sigma_x(), sigma_x()), {2 * block, 2 * block + 1}, dims);
}

Operator block_code_projector(int block, const std::vector<int>& dims) {
  require_qubit_block(block, dims);
  Matrix p = Matrix::Zero(4, 4);
  p(1, 1) = p(2, 2) = 1.0;
  return embed(Operator({2, 2}, std::move(p)), {2 * block, 2 * block + 1}, dims);
}

Operator block_leak_projector(int block, const std::vector<int>& dims) {
  require_qubit_block(block, dims);
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = p(3, 3) = 1.0;
  return embed(Operator({2, 2}, std::move(p)), {2 * block, 2 * block + 1}, dims);
}

// ---- QECC3 syndrome measurement & correction ----

namespace {

void require_n_qubit_prefix(const std::vector<int>& dims, int n, const char* who) {
  if (static_cast<int>(dims.size()) < n)
    throw std::invalid_argument(std::string(who) + ": expected at least " + std::to_string(n) +
                                " qubit factors");
  for (int k = 0; k < n; ++k)
    if (dims[k] != 2)
      throw std::invalid_argument(std::string(who) + ": factor " + std::to_string(k) +
                                  " is not a qubit");
}

// Projector (I + sign*S)/2 for a Hermitian-unitary stabilizer S.
Matrix parity_projector(const Matrix& s, int sign) {
  const int n = static_cast<int>(s.rows());
  return 0.5 * (Matrix::Identity(n, n) + static_cast<double>(sign) * s);
}

SyndromeResult::Outcome qecc3_outcome(int s1, int s2) {
  if (s1 > 0 && s2 > 0) return SyndromeResult::Outcome::no_error;
  if (s1 < 0 && s2 > 0) return SyndromeResult::Outcome::z_on_block_1;
  if (s1 < 0 && s2 < 0) return SyndromeResult::Outcome::z_on_block_2;
  return SyndromeResult::Outcome::z_on_block_3;
}

int qecc3_correction_block(SyndromeResult::Outcome o) {
  switch (o) {
    case SyndromeResult::Outcome::z_on_block_1: return 0;
    case SyndromeResult::Outcome::z_on_block_2: return 1;
    case SyndromeResult::Outcome::z_on_block_3: return 2;
    default: return -1;
  }
}

}  // namespace

Qecc3PureResult qecc3_syndrome_correct(const PureState& s, std::mt19937_64& gen) {
  require_n_qubit_prefix(s.dims, 6, "qecc3_syndrome_correct");
  const Matrix s1 = block_xx(0, s.dims).entries * block_xx(1, s.dims).entries;
  const Matrix s2 = block_xx(1, s.dims).entries * block_xx(2, s.dims).entries;

  Vector psi = s.amplitudes;
  int signs[2];
  for (int which = 0; which < 2; ++which) {
    const Matrix& stab = (which == 0) ? s1 : s2;
    const Vector minus = parity_projector(stab, -1) * psi;
    const double p_minus = minus.squaredNorm();
    const int sign = (rng::uniform01(gen) < p_minus) ? -1 : +1;
    psi = (sign < 0) ? minus : Vector(parity_projector(stab, +1) * psi);
    const double nrm = psi.norm();
    if (nrm == 0.0) throw std::runtime_error("qecc3_syndrome_correct: zero-norm branch");
    psi /= nrm;
    signs[which] = sign;
  }

  Qecc3PureResult out;
  out.syndrome.outcome = qecc3_outcome(signs[0], signs[1]);
  const int blk = qecc3_correction_block(out.syndrome.outcome);
  if (blk >= 0) psi = logical_z(blk, s.dims).entries * psi;
  out.state = PureState(s.dims, std::move(psi));
  return out;
}

Qecc3ChannelResult qecc3_syndrome_correct(const DensityMatrix& s) {
  require_n_qubit_prefix(s.dims, 6, "qecc3_syndrome_correct");
  const Matrix s1 = block_xx(0, s.dims).entries * block_xx(1, s.dims).entries;
  const Matrix s2 = block_xx(1, s.dims).entries * block_xx(2, s.dims).entries;

  const std::array<std::pair<int, int>, 4> syndromes = {{{+1, +1}, {-1, +1}, {-1, -1}, {+1, -1}}};
  Qecc3ChannelResult out;
  Matrix acc = Matrix::Zero(s.total_dim(), s.total_dim());
  double best = -1.0;
  for (size_t k = 0; k < syndromes.size(); ++k) {
    const auto [sg1, sg2] = syndromes[k];
    const Matrix p = parity_projector(s1, sg1) * parity_projector(s2, sg2);
    Matrix branch = p * s.entries * p;
    const double w = branch.trace().real();
    out.branch_weights[k] = w;
    const SyndromeResult::Outcome o = qecc3_outcome(sg1, sg2);
    const int blk = qecc3_correction_block(o);
    if (blk >= 0) {
      const Matrix& z = logical_z(blk, s.dims).entries;
      branch = z * branch * z;
    }
    acc += branch;
    if (w > best) {
      best = w;
      out.syndrome.outcome = o;
    }
  }
  out.state = DensityMatrix(s.dims, std::move(acc));
  return out;
}

// ---- DETECT2 stabilizer check ----

Detect2PureResult detect2_check(const PureState& s, std::mt19937_64& gen) {
  require_n_qubit_prefix(s.dims, 4, "detect2_check");
  const Matrix stab = block_xx(0, s.dims).entries * block_xx(1, s.dims).entries;
  const Vector minus = parity_projector(stab, -1) * s.amplitudes;
  Detect2PureResult out;
  out.p_detect = minus.squaredNorm();
  const bool detected = rng::uniform01(gen) < out.p_detect;
  Vector psi = detected ? minus : Vector(parity_projector(stab, +1) * s.amplitudes);
  const double nrm = psi.norm();
  if (nrm == 0.0) throw std::runtime_error("detect2_check: zero-norm branch");
  psi /= nrm;
  out.state = PureState(s.dims, std::move(psi));
  out.syndrome.outcome =
      detected ? SyndromeResult::Outcome::error_detected : SyndromeResult::Outcome::pass;
  return out;
}

Detect2ChannelResult detect2_check(const DensityMatrix& s) {
  require_n_qubit_prefix(s.dims, 4, "detect2_check");
  const Matrix stab = block_xx(0, s.dims).entries * block_xx(1, s.dims).entries;
  const Matrix pp = parity_projector(stab, +1), pm = parity_projector(stab, -1);
  Detect2ChannelResult out;
  Matrix plus = pp * s.entries * pp;
  Matrix minus = pm * s.entries * pm;
  out.flag_weight = minus.trace().real();
  out.syndrome.outcome = (out.flag_weight > 0.5) ? SyndromeResult::Outcome::error_detected
                                                 : SyndromeResult::Outcome::pass;
  out.state = DensityMatrix(s.dims, plus + minus);
  return out;
}

}  // namespace zenosim::codes
