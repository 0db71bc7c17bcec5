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

// verify.cpp — built-in property suite.

#include "zenosim/verify.hpp"

#include "zenosim/rng.hpp"
#include "zenosim/zeno.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace zenosim::verify {

using codes::LogicalQubit;
using codes::Scheme;

namespace {

// ---- helpers ----

double normal01(std::mt19937_64& gen) {
  // Box-Muller on the portable uniform stream.
  const double u1 = std::max(rng::uniform01(gen), 1e-300);
  const double u2 = rng::uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector random_state(int dim, std::mt19937_64& gen) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal01(gen), normal01(gen));
  return v / v.norm();
}

LogicalQubit random_logical(std::mt19937_64& gen) {
  const Vector v = random_state(2, gen);
  return {v(0), v(1)};
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

// ---- individual properties ----

// Model A keeps any DFS-encoded qubit exactly coherent, with and without
// Zeno measurements.
Check check_dfs_exactness(bool corrupt) {
  Check c;
  models::ModelAParams model;
  model.bath.omega = 1.0;
  std::mt19937_64 gen = rng::stream(11, 0);
  for (int rep = 0; rep < 3; ++rep) {
    const LogicalQubit q = random_logical(gen);
    for (Scheme s : {Scheme::DFS, Scheme::DFS_ZENO}) {
      engine::SchemeConfig cfg;
      cfg.layout = codes::CodeLayout::for_scheme(s);
      cfg.total_time = 10.0;
      cfg.zeno_count = (s == Scheme::DFS) ? 1 : 16;
      const engine::RunResult r = engine::run_scheme(q, model, cfg);
      const double target = corrupt ? 2.0 : 1.0;  // fault injection: impossible target
      c.expect(std::abs(r.final_fidelity - target) <= 1e-10,
               std::string(codes::scheme_name(s)) + " fidelity " +
                   std::to_string(r.final_fidelity) + " != 1 within 1e-10");
      c.expect(r.final_leak_weight <= 1e-10, "unexpected leakage");
    }
  }
  return c;
}

// Block code/leak projectors are idempotent, mutually orthogonal, and
// complete on every layout.
Check check_projector_completeness(bool corrupt) {
  Check c;
  for (Scheme s : {Scheme::DFS_ZENO, Scheme::DFS_ZENO_X_QECC3,
                   Scheme::DFS_ZENO_X_DETECT2_ZENO}) {
    const codes::CodeLayout layout = codes::CodeLayout::for_scheme(s);
    std::vector<int> dims(layout.n_physical, 2);
    dims.push_back(2);  // a small bath factor to exercise embedding
    const int n = product_of(dims);
    for (int b = 0; b < layout.n_blocks; ++b) {
      Matrix pc = codes::block_code_projector(b, dims).entries;
      const Matrix pl = codes::block_leak_projector(b, dims).entries;
      if (corrupt && b == 0) pc(0, 0) += 1.0;  // fault injection: break completeness
      c.expect((pc + pl - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12,
               std::string(codes::scheme_name(s)) + " block " + std::to_string(b) +
                   ": code + leak != identity");
      c.expect((pc * pc - pc).cwiseAbs().maxCoeff() <= 1e-12, "projector not idempotent");
      c.expect((pc * pl).cwiseAbs().maxCoeff() <= 1e-12, "projectors not orthogonal");
    }
  }
  return c;
}

// The ancilla-XOR circuit realizes exactly the same measurement as the
// direct code/leak projector pair.
Check check_ancilla_equivalence(bool corrupt) {
  Check c;
  const std::vector<int> dims = {2, 2, 3, 2};  // block, small bath, ancilla
  const int n = product_of(dims);
  const Matrix pc = codes::block_code_projector(0, dims).entries;
  std::mt19937_64 gen = rng::stream(12, 0);
  for (int rep = 0; rep < 25; ++rep) {
    Vector amp = random_state(n, gen);
    for (int i = 1; i < n; i += 2) amp(i) = 0.0;  // ancilla prepared in |0>
    amp /= amp.norm();
    const PureState s(dims, amp);

    const double p_code = (pc * amp).squaredNorm();
    std::mt19937_64 meas = rng::stream(13, static_cast<std::uint64_t>(rep));
    const engine::AncillaXorResult res = engine::ancilla_xor_measure(s, 0, meas);
    const double tol = corrupt ? 1e-18 : 1e-10;  // fault injection: impossible tolerance
    c.expect(std::abs(res.p_code - p_code) <= tol,
             "outcome probability mismatch " + std::to_string(std::abs(res.p_code - p_code)));

    const Matrix proj = (res.outcome == 1) ? pc : Matrix(Matrix::Identity(n, n) - pc);
    Vector expected = proj * amp;
    expected /= expected.norm();
    c.expect((res.state.amplitudes - expected).norm() <= tol, "post-state mismatch");
  }
  return c;
}

// encode -> decode is the identity for every scheme's code layer, and clean
// codewords produce trivial syndromes.
Check check_code_roundtrips(bool corrupt) {
  Check c;
  std::mt19937_64 gen = rng::stream(14, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const LogicalQubit q = random_logical(gen);
    const double offset = corrupt ? 1e-3 : 0.0;  // fault injection: claim wrong fidelity

    const codes::DfsDecode dec = codes::dfs_decode(codes::dfs_encode(q));
    const double fid = std::norm(std::conj(q.alpha) * dec.logical.alpha +
                                 std::conj(q.beta) * dec.logical.beta);
    c.expect(std::abs(fid - 1.0 - offset) <= 1e-12, "dfs decode fidelity != 1");
    c.expect(dec.leak_weight <= 1e-15, "dfs decode leak != 0");

    const PureState q3 = codes::qecc3_encode(q);
    std::mt19937_64 meas = rng::stream(15, static_cast<std::uint64_t>(rep));
    const codes::Qecc3PureResult r3 = codes::qecc3_syndrome_correct(q3, meas);
    c.expect(r3.syndrome.outcome == codes::SyndromeResult::Outcome::no_error,
             "clean qecc3 codeword has nontrivial syndrome");
    c.expect(std::abs(ops::fidelity(q3, r3.state) - 1.0) <= 1e-12,
             "qecc3 syndrome disturbed a clean codeword");

    const PureState q2 = codes::detect2_encode(q);
    std::mt19937_64 meas2 = rng::stream(16, static_cast<std::uint64_t>(rep));
    const codes::Detect2PureResult r2 = codes::detect2_check(q2, meas2);
    c.expect(r2.syndrome.outcome == codes::SyndromeResult::Outcome::pass,
             "clean detect2 codeword flagged");
    c.expect(r2.p_detect <= 1e-12, "clean detect2 codeword has detection weight");

    const PureState dg = codes::duan_guo_encode(q);
    c.expect(std::abs(dg.amplitudes.norm() - 1.0) <= 1e-12, "duan-guo codeword not normalized");
  }
  return c;
}

// propagator() returns a unitary that composes additively in time.
Check check_propagator_unitarity(bool corrupt) {
  Check c;
  std::mt19937_64 gen = rng::stream(17, 0);
  const int dim = 12;
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex z(normal01(gen), i == j ? 0.0 : normal01(gen));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  const Operator hop({dim}, h);
  const Operator u1 = ops::propagator(hop, 0.7);
  const Operator u2 = ops::propagator(hop, 0.3);
  const Operator u12 = ops::propagator(hop, corrupt ? 1.1 : 1.0);  // fault injection
  c.expect(unitarity_error(u1) <= 1e-10, "U(0.7) not unitary");
  c.expect((u1.entries * u2.entries - u12.entries).cwiseAbs().maxCoeff() <= 1e-9,
           "U(0.7) U(0.3) != U(1.0)");
  return c;
}

// Non-selective evolution + measurement preserves the trace and keeps the
// leak weight a probability.
Check check_trace_preservation(bool corrupt) {
  Check c;
  models::ModelBParams model;
  const Operator h = models::build_model_b(model, 1);
  const Operator u = ops::propagator(h, 0.5);
  const codes::CodeLayout layout = codes::CodeLayout::for_scheme(Scheme::DFS_ZENO);
  const LogicalQubit q{Complex(0.6, 0.0), Complex(0.8, 0.0)};
  PureState psi = ops::kron(codes::dfs_encode(q), models::build_bath(model.bath).psi_b0);
  DensityMatrix rho = to_density(psi);
  for (int k = 0; k < 5; ++k) {
    const engine::StepRecord rec = engine::zeno_step(rho, u, layout);
    const double drift = corrupt ? 1.0 : 0.0;  // fault injection: fake a trace drift
    c.expect(std::abs(rho.entries.trace().real() - 1.0 + drift) <= 1e-10,
             "trace drifted at step " + std::to_string(k + 1));
    c.expect(rec.leak_weight >= -1e-12 && rec.leak_weight <= 1.0 + 1e-12,
             "leak weight outside [0, 1]");
  }
  return c;
}

std::string normalize_name(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '-');
  return s;
}

}  // namespace

std::vector<PropertyResult> run_all(const VerifyOptions& options) {
  const std::string fault = normalize_name(options.inject_fault);
  struct Entry {
    const char* name;
    Check (*fn)(bool);
  };
  static constexpr Entry kSuite[] = {
      {"dfs-exactness", check_dfs_exactness},
      {"projector-completeness", check_projector_completeness},
      {"ancilla-xor-equivalence", check_ancilla_equivalence},
      {"code-roundtrips", check_code_roundtrips},
      {"propagator-unitarity", check_propagator_unitarity},
      {"trace-preservation", check_trace_preservation},
  };

  std::vector<PropertyResult> results;
  for (const Entry& entry : kSuite) {
    const auto start = std::chrono::steady_clock::now();
    PropertyResult r;
    r.name = entry.name;
    try {
      const Check c = entry.fn(fault == entry.name);
      r.passed = c.ok;
      r.detail = c.ok ? "ok" : c.detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace zenosim::verify
