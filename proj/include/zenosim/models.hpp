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

// models.hpp — Dephasing-model Hamiltonians over system ⊗ bath.
//
// Model A is ideal collective dephasing: both qubits of a pair couple
// identically (strength lambda) to the same bath operator V_z, so the span
// of {|01>, |10>} is an exact decoherence-free subspace.
//
// Model B generalizes Model A with per-qubit energies (epsilon1, epsilon2),
// per-qubit dephasing couplings (lambda1_z, lambda2_z) and small off-diagonal
// exchange couplings (lambda1_plus, lambda2_plus paired with V_plus and the
// Hermitian conjugates).  The exchange terms open a leakage channel from the
// code space {|01>, |10>} into {|00>, |11>}; the asymmetries delta_eps and
// delta_lambda_z generate logical phase errors inside the code space.
//
// The bath is a single truncated bosonic mode per qubit pair, H_B = omega n.
// Default omega = 2 = 2*epsilon1 puts the bath quantum on resonance with the
// |01>/|10> -> |11> exchange transition, the regime where short-time leakage
// growth is cleanly quadratic (see the README's defaults discussion).

#pragma once

#include "zenosim/ops.hpp"
#include "zenosim/types.hpp"

namespace zenosim::models {

// ---- bath ----

enum class CouplingForm { position, number };           // V_z = a + a†  or  V_z = n
enum class BathInitialState { ground, coherent };       // |0>  or truncated |alpha_b>
enum class ExchangeForm { bath_lowering, bath_raising };  // V_plus = a  or  V_plus = a†

const char* coupling_form_name(CouplingForm f);
CouplingForm coupling_form_from_name(const std::string& name);  // throws on unknown
const char* bath_initial_state_name(BathInitialState s);
BathInitialState bath_initial_state_from_name(const std::string& name);
const char* exchange_form_name(ExchangeForm f);
ExchangeForm exchange_form_from_name(const std::string& name);

struct BathSpec {
  int levels = 4;                                        // bath Hilbert dimension M >= 1
  double omega = 2.0;                                    // H_B = omega * n
  CouplingForm coupling_form = CouplingForm::position;
  BathInitialState initial_state = BathInitialState::ground;
  Complex coherent_alpha{0.0, 0.0};                      // used when initial_state == coherent
  ExchangeForm exchange_form = ExchangeForm::bath_raising;  // selects V_plus
};

void validate(const BathSpec& spec);

struct BathOperators {
  Operator hb;      // omega * n
  Operator vz;      // per coupling_form
  Operator vplus;   // per exchange_form
  Operator vminus;  // vplus†
  PureState psi_b0;
};

// Truncated ladder operators: a|k> = sqrt(k)|k-1> for k < M.
BathOperators build_bath(const BathSpec& spec);

// ---- model parameters ----

struct ModelAParams {
  double epsilon = 1.0;
  double lambda_z = 0.2;
  BathSpec bath;
};

struct ModelBParams {
  double epsilon1 = 1.0;
  double epsilon2 = 1.0;
  double lambda1_z = 0.2;
  double lambda2_z = 0.2;
  Complex lambda1_plus{0.02, 0.0};
  Complex lambda2_plus{0.02, 0.0};
  BathSpec bath;

  // lambda_i_minus is stored implicitly as conj(lambda_i_plus) and
  // V_minus = V_plus†, so the interaction is Hermitian by construction.
  double delta_eps() const { return epsilon2 - epsilon1; }
  double delta_lambda_z() const { return lambda2_z - lambda1_z; }
};

// ---- builders ----
// Factor layout of the returned Hamiltonians: qubits first (2 per pair, in
// pair order), then one bath factor per pair, in the same order.  Distinct
// pairs own independent bath modes and do not interact.

// H = sum over pairs of [ eps(sz1 + sz2) + lambda (sz1 + sz2) ⊗ Vz + H_B ].
Operator build_model_a(const ModelAParams& p, int n_pairs);

// H = sum over pairs of [ eps1 sz1 + eps2 sz2
//                         + (l1z sz1 + l2z sz2) ⊗ Vz
//                         + (l1p s1+ + l2p s2+) ⊗ Vplus + h.c. + H_B ].
Operator build_model_b(const ModelBParams& p, int n_pairs = 1);

// Unencoded single-qubit reference: qubit 1's row of Model B over [2, M].
Operator build_model_bare(const ModelBParams& p);

}  // namespace zenosim::models
