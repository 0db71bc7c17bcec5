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

#include "zenosim/models.hpp"

#include <doctest.h>

#include <cmath>

using namespace zenosim;
using namespace zenosim::models;

TEST_CASE("bath ladder operator and Hamiltonian have sqrt(k) entries") {
  BathSpec spec;
  spec.levels = 5;
  spec.omega = 2.0;
  const BathOperators bath = build_bath(spec);
  // vplus defaults to a† (bath_raising): <k+1| a† |k> = sqrt(k+1).
  for (int k = 0; k + 1 < spec.levels; ++k) {
    CHECK(bath.vplus.entries(k + 1, k).real() == doctest::Approx(std::sqrt(k + 1.0)));
    CHECK(bath.vminus.entries(k, k + 1).real() == doctest::Approx(std::sqrt(k + 1.0)));
  }
  CHECK((bath.vminus.entries - bath.vplus.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  for (int k = 0; k < spec.levels; ++k)
    CHECK(bath.hb.entries(k, k).real() == doctest::Approx(spec.omega * k));
  // Ground initial state.
  CHECK(bath.psi_b0.amplitudes(0) == Complex(1, 0));
  CHECK(bath.psi_b0.amplitudes.tail(spec.levels - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling forms select position versus number operator") {
  BathSpec spec;
  spec.levels = 4;
  spec.coupling_form = CouplingForm::position;
  const BathOperators pos = build_bath(spec);
  CHECK(pos.vz.entries(0, 1).real() == doctest::Approx(1.0));  // a + a†
  CHECK(pos.vz.entries(1, 0).real() == doctest::Approx(1.0));
  CHECK(pos.vz.entries(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(is_hermitian(pos.vz));

  spec.coupling_form = CouplingForm::number;
  const BathOperators num = build_bath(spec);
  for (int k = 0; k < 4; ++k) CHECK(num.vz.entries(k, k).real() == doctest::Approx(double(k)));
  CHECK(num.vz.entries.cwiseAbs().sum() == doctest::Approx(0 + 1 + 2 + 3));
}

TEST_CASE("coherent bath state is truncated and renormalized") {
  BathSpec spec;
  spec.levels = 3;
  spec.initial_state = BathInitialState::coherent;
  spec.coherent_alpha = Complex(0.8, -0.3);
  const BathOperators bath = build_bath(spec);
  const Vector& v = bath.psi_b0.amplitudes;
  CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  // Amplitude ratios follow alpha^k / sqrt(k!) even after truncation.
  const Complex a = spec.coherent_alpha;
  CHECK(std::abs(v(1) / v(0) - a) <= 1e-12);
  CHECK(std::abs(v(2) / v(0) - a * a / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("bath defaults match the documented resonance configuration") {
  const BathSpec spec;
  CHECK(spec.levels == 4);
  CHECK(spec.omega == 2.0);
  CHECK(spec.coupling_form == CouplingForm::position);
  CHECK(spec.initial_state == BathInitialState::ground);
  CHECK(spec.exchange_form == ExchangeForm::bath_raising);
}

TEST_CASE("bath validation rejects nonsense") {
  BathSpec spec;
  spec.levels = 0;
  CHECK_THROWS_AS(models::validate(spec), std::invalid_argument);
  spec.levels = 4;
  spec.omega = std::nan("");
  CHECK_THROWS_AS(models::validate(spec), std::invalid_argument);
  spec.omega = -0.5;  // detuned below resonance is legal
  CHECK_NOTHROW(models::validate(spec));
}

TEST_CASE("model Hamiltonians are Hermitian with the declared layout") {
  ModelBParams p;
  p.epsilon2 = 1.1;
  p.lambda2_z = 0.25;
  p.lambda1_plus = Complex(0.02, 0.01);
  const Operator h1 = build_model_b(p, 1);
  CHECK(h1.dims == std::vector<int>{2, 2, 4});
  CHECK(is_hermitian(h1));

  const Operator h2 = build_model_b(p, 2);
  CHECK(h2.dims == std::vector<int>{2, 2, 2, 2, 4, 4});
  CHECK(is_hermitian(h2));

  const Operator hb = build_model_bare(p);
  CHECK(hb.dims == std::vector<int>{2, 4});
  CHECK(is_hermitian(hb));

  const Operator ha = build_model_a(ModelAParams{}, 1);
  CHECK(ha.dims == std::vector<int>{2, 2, 4});
  CHECK(is_hermitian(ha));
}

TEST_CASE("model B with zero asymmetry and zero exchange reduces to model A") {
  ModelAParams a;
  a.epsilon = 1.3;
  a.lambda_z = 0.17;
  a.bath.levels = 3;
  ModelBParams b;
  b.epsilon1 = b.epsilon2 = a.epsilon;
  b.lambda1_z = b.lambda2_z = a.lambda_z;
  b.lambda1_plus = b.lambda2_plus = Complex(0, 0);
  b.bath = a.bath;
  CHECK(b.delta_eps() == 0.0);
  CHECK(b.delta_lambda_z() == 0.0);
  const Operator ha = build_model_a(a, 2);
  const Operator hb = build_model_b(b, 2);
  CHECK((ha.entries - hb.entries).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("asymmetry accessors report the configured differences") {
  ModelBParams p;
  p.epsilon1 = 1.0;
  p.epsilon2 = 1.05;
  p.lambda1_z = 0.2;
  p.lambda2_z = 0.22;
  CHECK(p.delta_eps() == doctest::Approx(0.05));
  CHECK(p.delta_lambda_z() == doctest::Approx(0.02));
}

TEST_CASE("exchange form flips which ladder operator couples") {
  ModelBParams p;
  p.bath.levels = 3;
  p.bath.exchange_form = ExchangeForm::bath_lowering;
  const BathOperators bath = build_bath(p.bath);
  CHECK(bath.vplus.entries(0, 1).real() == doctest::Approx(1.0));  // a lowers
  CHECK(bath.vplus.entries(1, 0) == Complex(0, 0));
  CHECK(is_hermitian(build_model_b(p, 1)));
}

TEST_CASE("enum names round-trip and reject unknown strings") {
  CHECK(coupling_form_from_name(coupling_form_name(CouplingForm::position)) ==
        CouplingForm::position);
  CHECK(coupling_form_from_name(coupling_form_name(CouplingForm::number)) == CouplingForm::number);
  CHECK(bath_initial_state_from_name(bath_initial_state_name(BathInitialState::ground)) ==
        BathInitialState::ground);
  CHECK(bath_initial_state_from_name(bath_initial_state_name(BathInitialState::coherent)) ==
        BathInitialState::coherent);
  CHECK(exchange_form_from_name(exchange_form_name(ExchangeForm::bath_lowering)) ==
        ExchangeForm::bath_lowering);
  CHECK(exchange_form_from_name(exchange_form_name(ExchangeForm::bath_raising)) ==
        ExchangeForm::bath_raising);
  CHECK_THROWS_AS(coupling_form_from_name("momentum"), std::invalid_argument);
  CHECK_THROWS_AS(bath_initial_state_from_name("thermal"), std::invalid_argument);
  CHECK_THROWS_AS(exchange_form_from_name("both"), std::invalid_argument);
}
