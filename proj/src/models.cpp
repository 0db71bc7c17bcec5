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

// models.cpp — dephasing-model Hamiltonian builders.

#include "zenosim/models.hpp"

#include <cmath>

namespace zenosim::models {

using ops::embed;
using ops::sigma_minus;
using ops::sigma_plus;
using ops::sigma_z;

const char* coupling_form_name(CouplingForm f) {
  switch (f) {
    case CouplingForm::position: return "position";
    case CouplingForm::number: return "number";
  }
  throw std::logic_error("coupling_form_name: unreachable");
}

CouplingForm coupling_form_from_name(const std::string& name) {
  for (CouplingForm f : {CouplingForm::position, CouplingForm::number})
    if (name == coupling_form_name(f)) return f;
  throw std::invalid_argument("unknown coupling_form '" + name + "'");
}

const char* bath_initial_state_name(BathInitialState s) {
  switch (s) {
    case BathInitialState::ground: return "ground";
    case BathInitialState::coherent: return "coherent";
  }
  throw std::logic_error("bath_initial_state_name: unreachable");
}

BathInitialState bath_initial_state_from_name(const std::string& name) {
  for (BathInitialState s : {BathInitialState::ground, BathInitialState::coherent})
    if (name == bath_initial_state_name(s)) return s;
  throw std::invalid_argument("unknown initial_state '" + name + "'");
}

const char* exchange_form_name(ExchangeForm f) {
  switch (f) {
    case ExchangeForm::bath_lowering: return "bath_lowering";
    case ExchangeForm::bath_raising: return "bath_raising";
  }
  throw std::logic_error("exchange_form_name: unreachable");
}

ExchangeForm exchange_form_from_name(const std::string& name) {
  for (ExchangeForm f : {ExchangeForm::bath_lowering, ExchangeForm::bath_raising})
    if (name == exchange_form_name(f)) return f;
  throw std::invalid_argument("unknown exchange_form '" + name + "'");
}

void validate(const BathSpec& spec) {
  if (spec.levels < 1) throw std::invalid_argument("bath.levels: must be >= 1");
  if (!std::isfinite(spec.omega)) throw std::invalid_argument("bath.omega: must be finite");
}

BathOperators build_bath(const BathSpec& spec) {
  validate(spec);
  const int m = spec.levels;
  Matrix a = Matrix::Zero(m, m);
  for (int k = 1; k < m; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix ad = a.adjoint();
  const Matrix n = ad * a;

  BathOperators out;
  out.hb = Operator({m}, spec.omega * n);
  out.vz = (spec.coupling_form == CouplingForm::position) ? Operator({m}, a + ad)
                                                          : Operator({m}, n);
  out.vplus = (spec.exchange_form == ExchangeForm::bath_raising) ? Operator({m}, ad)
                                                                 : Operator({m}, a);
  out.vminus = Operator({m}, out.vplus.entries.adjoint());

  Vector psi = Vector::Zero(m);
  if (spec.initial_state == BathInitialState::ground) {
    psi(0) = 1.0;
  } else {
    // Truncated coherent state, renormalized after truncation.
    Complex c(1.0, 0.0);
    for (int k = 0; k < m; ++k) {
      psi(k) = c;
      c *= spec.coherent_alpha / std::sqrt(static_cast<double>(k + 1));
    }
    const double nrm = psi.norm();
    if (nrm == 0.0) throw std::invalid_argument("bath.coherent_alpha: truncated state has zero norm");
    psi /= nrm;
  }
  out.psi_b0 = PureState({m}, std::move(psi));
  return out;
}

namespace {

std::vector<int> layout_dims(int n_pairs, int m) {
  std::vector<int> dims(2 * n_pairs, 2);
  dims.insert(dims.end(), n_pairs, m);
  return dims;
}

}  // namespace

Operator build_model_a(const ModelAParams& p, int n_pairs) {
  if (n_pairs < 1) throw std::invalid_argument("build_model_a: n_pairs must be >= 1");
  const BathOperators b = build_bath(p.bath);
  const std::vector<int> dims = layout_dims(n_pairs, p.bath.levels);
  const int n = product_of(dims);
  Matrix h = Matrix::Zero(n, n);

  for (int pair = 0; pair < n_pairs; ++pair) {
    const int q1 = 2 * pair, q2 = 2 * pair + 1, bf = 2 * n_pairs + pair;
    const Matrix sz1 = embed(sigma_z(), {q1}, dims).entries;
    const Matrix sz2 = embed(sigma_z(), {q2}, dims).entries;
    const Matrix vz = embed(b.vz, {bf}, dims).entries;
    h += p.epsilon * (sz1 + sz2);
    h += p.lambda_z * (sz1 + sz2) * vz;
    h += embed(b.hb, {bf}, dims).entries;
  }
  return Operator(dims, std::move(h));
}

Operator build_model_b(const ModelBParams& p, int n_pairs) {
  if (n_pairs < 1) throw std::invalid_argument("build_model_b: n_pairs must be >= 1");
  const BathOperators b = build_bath(p.bath);
  const std::vector<int> dims = layout_dims(n_pairs, p.bath.levels);
  const int n = product_of(dims);
  Matrix h = Matrix::Zero(n, n);

  for (int pair = 0; pair < n_pairs; ++pair) {
    const int q1 = 2 * pair, q2 = 2 * pair + 1, bf = 2 * n_pairs + pair;
    const Matrix sz1 = embed(sigma_z(), {q1}, dims).entries;
    const Matrix sz2 = embed(sigma_z(), {q2}, dims).entries;
    const Matrix sp1 = embed(sigma_plus(), {q1}, dims).entries;
    const Matrix sp2 = embed(sigma_plus(), {q2}, dims).entries;
    const Matrix vz = embed(b.vz, {bf}, dims).entries;
    const Matrix vp = embed(b.vplus, {bf}, dims).entries;

    h += p.epsilon1 * sz1 + p.epsilon2 * sz2;
    h += (p.lambda1_z * sz1 + p.lambda2_z * sz2) * vz;
    const Matrix exchange = (p.lambda1_plus * sp1 + p.lambda2_plus * sp2) * vp;
    h += exchange + exchange.adjoint();
    h += embed(b.hb, {bf}, dims).entries;
  }
  return Operator(dims, std::move(h));
}

Operator build_model_bare(const ModelBParams& p) {
  const BathOperators b = build_bath(p.bath);
  const std::vector<int> dims = {2, p.bath.levels};
  const Matrix sz1 = embed(sigma_z(), {0}, dims).entries;
  const Matrix sp1 = embed(sigma_plus(), {0}, dims).entries;
  const Matrix vz = embed(b.vz, {1}, dims).entries;
  const Matrix vp = embed(b.vplus, {1}, dims).entries;

  Matrix h = p.epsilon1 * sz1 + p.lambda1_z * sz1 * vz;
  const Matrix exchange = p.lambda1_plus * sp1 * vp;
  h += exchange + exchange.adjoint();
  h += embed(b.hb, {1}, dims).entries;
  return Operator(dims, std::move(h));
}

}  // namespace zenosim::models
