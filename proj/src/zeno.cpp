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

// zeno.cpp — scheme runner and measurement plumbing.

#include "zenosim/zeno.hpp"

#include "zenosim/rng.hpp"

#include <chrono>
#include <cmath>

namespace zenosim::engine {

using codes::CodeLayout;
using codes::LogicalQubit;
using codes::Scheme;
using models::ModelAParams;
using models::ModelBParams;

// ---- enum name maps ----

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::nonselective: return "nonselective";
    case Mode::trajectory: return "trajectory";
    case Mode::postselect: return "postselect";
  }
  throw std::logic_error("mode_name: unreachable");
}

Mode mode_from_name(const std::string& name) {
  for (Mode m : {Mode::nonselective, Mode::trajectory, Mode::postselect})
    if (name == mode_name(m)) return m;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

const char* measurement_impl_name(MeasurementImpl m) {
  switch (m) {
    case MeasurementImpl::projector: return "projector";
    case MeasurementImpl::ancilla_xor: return "ancilla_xor";
  }
  throw std::logic_error("measurement_impl_name: unreachable");
}

MeasurementImpl measurement_impl_from_name(const std::string& name) {
  for (MeasurementImpl m : {MeasurementImpl::projector, MeasurementImpl::ancilla_xor})
    if (name == measurement_impl_name(m)) return m;
  throw std::invalid_argument("unknown measurement_impl '" + name + "'");
}

const char* stabilizer_order_name(StabilizerOrder o) {
  switch (o) {
    case StabilizerOrder::inner_first: return "inner_first";
    case StabilizerOrder::outer_first: return "outer_first";
  }
  throw std::logic_error("stabilizer_order_name: unreachable");
}

StabilizerOrder stabilizer_order_from_name(const std::string& name) {
  for (StabilizerOrder o : {StabilizerOrder::inner_first, StabilizerOrder::outer_first})
    if (name == stabilizer_order_name(o)) return o;
  throw std::invalid_argument("unknown stabilizer_order '" + name + "'");
}

// ---- validation ----

void validate(const SchemeConfig& cfg) {
  const Scheme s = cfg.layout.scheme;
  if (cfg.zeno_count < 1) throw std::invalid_argument("scheme.zeno_count: N >= 1 required");
  if (!(cfg.total_time >= 0.0) || !std::isfinite(cfg.total_time))
    throw std::invalid_argument("scheme.total_time: must be a finite nonnegative real");
  if (cfg.mode == Mode::trajectory && cfg.samples < 1)
    throw std::invalid_argument("scheme.samples: >= 1 required in trajectory mode");
  if (cfg.inner_zeno_count < 0)
    throw std::invalid_argument("scheme.inner_zeno_count: N2 >= 0 required");
  if (cfg.inner_zeno_count > 0 && s != Scheme::DFS_ZENO_X_DETECT2_ZENO)
    throw std::invalid_argument(
        "scheme.inner_zeno_count: N2 applies only to DFS_ZENO_X_DETECT2_ZENO");
  if (cfg.inner_zeno_count > 0 && cfg.zeno_count % cfg.inner_zeno_count != 0)
    throw std::invalid_argument("scheme.inner_zeno_count: N2 must divide N");
  if (cfg.qecc3_correct_every_k < 0)
    throw std::invalid_argument("scheme.qecc3_correct_every_k: must be >= 0");
  if (cfg.qecc3_correct_every_k > 0 && s != Scheme::DFS_ZENO_X_QECC3)
    throw std::invalid_argument(
        "scheme.qecc3_correct_every_k: applies only to DFS_ZENO_X_QECC3");
  if (cfg.inject_z_block >= 0 && cfg.layout.n_blocks > 0 &&
      cfg.inject_z_block >= cfg.layout.n_blocks)
    throw std::invalid_argument("scheme.inject_z_block: block index out of range");
}

// ---- code projectors ----

std::pair<Operator, Operator> code_projectors(const CodeLayout& layout,
                                              const std::vector<int>& dims) {
  if (layout.n_blocks < 1)
    throw std::invalid_argument("code_projectors: layout has no DFS blocks");
  const int n = product_of(dims);
  Matrix pc = Matrix::Identity(n, n);
  for (int b = 0; b < layout.n_blocks; ++b)
    pc = pc * codes::block_code_projector(b, dims).entries;
  Matrix pl = Matrix::Identity(n, n) - pc;
  return {Operator(dims, std::move(pc)), Operator(dims, std::move(pl))};
}

// ---- ancilla XOR measurement ----

namespace {

Operator cnot_pair() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;  // control |0>: identity on target
  m(2, 3) = m(3, 2) = 1.0;  // control |1>: X on target
  return Operator({2, 2}, std::move(m));
}

}  // namespace

AncillaXorResult ancilla_xor_measure(const PureState& s, int block, std::mt19937_64& gen) {
  const int nf = static_cast<int>(s.dims.size());
  if (nf < 3 || s.dims[nf - 1] != 2)
    throw std::invalid_argument("ancilla_xor_measure: last factor must be an ancilla qubit");
  const int anc = nf - 1;
  const int q1 = 2 * block, q2 = 2 * block + 1;
  if (q2 >= anc || s.dims[q1] != 2 || s.dims[q2] != 2)
    throw std::invalid_argument("ancilla_xor_measure: block index out of range");

  // The ancilla must enter in |0>: all odd (ancilla = 1) amplitudes vanish.
  const int n = s.total_dim();
  double odd = 0.0;
  for (int i = 1; i < n; i += 2) odd += std::norm(s.amplitudes(i));
  if (odd > 1e-20)
    throw std::invalid_argument("ancilla_xor_measure: ancilla not prepared in |0>");

  const Operator circuit_op = ops::embed(cnot_pair(), {q1, anc}, s.dims);
  const Operator circuit_op2 = ops::embed(cnot_pair(), {q2, anc}, s.dims);
  Vector psi = circuit_op2.entries * (circuit_op.entries * s.amplitudes);

  // Ancilla is the last (fastest) factor: odd global indices carry ancilla 1.
  double p1 = 0.0;
  for (int i = 1; i < n; i += 2) p1 += std::norm(psi(i));
  const int outcome = (rng::uniform01(gen) < p1) ? 1 : 0;

  Vector post = Vector::Zero(n);
  if (outcome == 1) {
    // Keep ancilla-1 amplitudes, reset ancilla to |0> (unitary X after the
    // measurement has decoupled it).
    for (int i = 1; i < n; i += 2) post(i - 1) = psi(i);
  } else {
    for (int i = 0; i < n; i += 2) post(i) = psi(i);
  }
  const double nrm = post.norm();
  if (nrm == 0.0) throw std::runtime_error("ancilla_xor_measure: zero-norm branch");
  post /= nrm;

  AncillaXorResult out;
  out.outcome = outcome;
  out.p_code = p1;
  out.state = PureState(s.dims, std::move(post));
  return out;
}

// ---- zeno_step (density-matrix convenience op) ----

StepRecord zeno_step(DensityMatrix& rho, const Operator& u_step, const CodeLayout& layout) {
  rho = ops::apply(u_step, rho);
  StepRecord rec;
  if (layout.n_blocks >= 1) {
    const auto [pc, pl] = code_projectors(layout, rho.dims);
    rec.leak_weight = 1.0 - ops::real_expectation(pc, rho);
    for (int b = 0; b < layout.n_blocks; ++b) {
      const Matrix& c = codes::block_code_projector(b, rho.dims).entries;
      const Matrix& l = codes::block_leak_projector(b, rho.dims).entries;
      rho.entries = c * rho.entries * c + l * rho.entries * l;
    }
  }
  return rec;
}

// ---- engine context ----

namespace {

struct Context {
  CodeLayout layout;
  std::vector<int> dims;   // qubits first, baths last
  int n_baths = 1;
  int sys_dim = 1, bath_dim = 1;
  Operator u_step;
  // Every block projector is diagonal in the computational basis, so the
  // code-space structure is stored as 0/1 diagonals and the non-selective
  // block measurement as a single elementwise mask.
  Vector code_diag;               // all-blocks code projector diagonal
  std::vector<Vector> block_code_diag;  // per-block code diagonals
  Matrix meas_mask;               // elementwise 0/1 dephasing mask (all blocks)
  Matrix p_code_dense;            // non-diagonal code projector (Duan-Guo span)
  bool code_is_diag = true;
  Matrix stabilizer;       // DETECT2 outer stabilizer (XX ⊗ XX)
  Matrix inject;           // Z~ injection operator (empty if unused)
  std::vector<Matrix> anc_cnots;  // cached per-block CNOT pairs (ancilla impl)
  PureState psi0;
  Vector enc_sys, enc_perp_sys;
  bool has_code_space = true;
  bool measured = false;  // per-step leakage measurements active
  int stab_every = 0;     // DETECT2: stabilizer cadence in steps (0 = never)
};

Matrix duan_guo_logical_z(const std::vector<int>& dims) {
  // I - 2 |L1><L1| : acts as the logical phase flip on the Duan-Guo span.
  const PureState l1 = codes::duan_guo_encode({Complex(0, 0), Complex(1, 0)});
  const Matrix m = Matrix::Identity(4, 4) - 2.0 * (l1.amplitudes * l1.amplitudes.adjoint());
  return ops::embed(Operator({2, 2}, m), {0, 1}, dims).entries;
}

Context build_context(const LogicalQubit& q, const ModelParams& model, const SchemeConfig& cfg) {
  codes::require_normalized(q);
  validate(cfg);

  Context ctx;
  ctx.layout = cfg.layout;
  const Scheme s = ctx.layout.scheme;
  const int n_pairs = (s == Scheme::BARE) ? 1 : ctx.layout.n_physical / 2;
  ctx.n_baths = n_pairs;

  const models::BathSpec bath = std::visit([](const auto& p) { return p.bath; }, model);
  ctx.dims.assign(ctx.layout.n_physical, 2);
  ctx.dims.insert(ctx.dims.end(), ctx.n_baths, bath.levels);
  ctx.sys_dim = 1;
  for (int k = 0; k < ctx.layout.n_physical; ++k) ctx.sys_dim *= 2;
  ctx.bath_dim = product_of(ctx.dims) / ctx.sys_dim;

  const Operator h = std::visit(
      [&](const auto& p) -> Operator {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ModelAParams>) {
          if (s == Scheme::BARE) {
            ModelBParams bare;
            bare.epsilon1 = p.epsilon;
            bare.lambda1_z = p.lambda_z;
            bare.lambda1_plus = Complex(0, 0);
            bare.bath = p.bath;
            return models::build_model_bare(bare);
          }
          return models::build_model_a(p, n_pairs);
        } else {
          if (s == Scheme::BARE) return models::build_model_bare(p);
          return models::build_model_b(p, n_pairs);
        }
      },
      model);
  ctx.u_step = ops::propagator(h, cfg.total_time / cfg.zeno_count);

  // Initial state: encoded system ⊗ one bath vector per pair.
  const PureState bath0 = models::build_bath(bath).psi_b0;
  PureState psi = codes::encode(ctx.layout, q);
  ctx.enc_sys = psi.amplitudes;
  ctx.enc_perp_sys = codes::encode(ctx.layout, q.orthogonal()).amplitudes;
  for (int b = 0; b < ctx.n_baths; ++b) psi = ops::kron(psi, bath0);
  ctx.psi0 = std::move(psi);

  // Code-space structure.
  const int n = product_of(ctx.dims);
  if (s == Scheme::BARE) {
    ctx.has_code_space = false;
  } else if (s == Scheme::DUAN_GUO) {
    const PureState l0 = codes::duan_guo_encode({Complex(1, 0), Complex(0, 0)});
    const PureState l1 = codes::duan_guo_encode({Complex(0, 0), Complex(1, 0)});
    const Matrix span = l0.amplitudes * l0.amplitudes.adjoint() +
                        l1.amplitudes * l1.amplitudes.adjoint();
    ctx.p_code_dense = ops::embed(Operator({2, 2}, span), {0, 1}, ctx.dims).entries;
    ctx.code_is_diag = false;
  } else {
    ctx.code_diag = Vector::Ones(n);
    ctx.meas_mask = Matrix::Ones(n, n);
    for (int b = 0; b < ctx.layout.n_blocks; ++b) {
      const Vector cb = codes::block_code_projector(b, ctx.dims).entries.diagonal();
      ctx.block_code_diag.push_back(cb);
      ctx.code_diag = ctx.code_diag.cwiseProduct(cb);
      // Mask entry (i,j) survives iff basis states i and j agree on whether
      // block b is inside its code space.
      const Vector lb = Vector::Ones(n) - cb;
      ctx.meas_mask = ctx.meas_mask.cwiseProduct(
          (cb * cb.transpose() + lb * lb.transpose()).eval());
    }
  }

  ctx.measured = (s == Scheme::DFS_ZENO || s == Scheme::DFS_ZENO_X_QECC3 ||
                  s == Scheme::DFS_ZENO_X_DETECT2_ZENO);

  if (s == Scheme::DFS_ZENO_X_DETECT2_ZENO && cfg.inner_zeno_count > 0) {
    ctx.stab_every = cfg.zeno_count / cfg.inner_zeno_count;
    ctx.stabilizer = codes::block_xx(0, ctx.dims).entries * codes::block_xx(1, ctx.dims).entries;
  }

  if (cfg.inject_z_block >= 0) {
    if (s == Scheme::BARE) {
      ctx.inject = ops::embed(ops::sigma_z(), {0}, ctx.dims).entries;
    } else if (s == Scheme::DUAN_GUO) {
      ctx.inject = duan_guo_logical_z(ctx.dims);
    } else {
      ctx.inject = codes::logical_z(cfg.inject_z_block, ctx.dims).entries;
    }
  }

  if (cfg.measurement_impl == MeasurementImpl::ancilla_xor && ctx.measured) {
    // Cache the two CNOT matrices per block over dims + ancilla.
    std::vector<int> adims = ctx.dims;
    adims.push_back(2);
    const int anc = static_cast<int>(adims.size()) - 1;
    for (int b = 0; b < ctx.layout.n_blocks; ++b) {
      ctx.anc_cnots.push_back(ops::embed(cnot_pair(), {2 * b, anc}, adims).entries);
      ctx.anc_cnots.push_back(ops::embed(cnot_pair(), {2 * b + 1, anc}, adims).entries);
    }
  }
  return ctx;
}

double leak_weight_of(const Context& ctx, const Matrix& rho) {
  if (!ctx.has_code_space) return 0.0;
  if (ctx.code_is_diag)
    return 1.0 - ctx.code_diag.cwiseProduct(rho.diagonal()).sum().real();
  return 1.0 - (ctx.p_code_dense * rho).trace().real();
}

double leak_weight_of(const Context& ctx, const Vector& psi) {
  if (!ctx.has_code_space) return 0.0;
  if (ctx.code_is_diag) {
    double w = 0.0;
    for (int i = 0; i < psi.size(); ++i)
      w += ctx.code_diag(i).real() * std::norm(psi(i));
    return 1.0 - w;
  }
  const Complex w = psi.adjoint() * (ctx.p_code_dense * psi);
  return 1.0 - w.real();
}

// <enc| Tr_bath(|psi><psi|) |enc> without forming the density matrix.
double pure_system_overlap(const Vector& psi, const Vector& enc, int sys_dim, int bath_dim) {
  using RowMajorMatrix =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajorMatrix> m(psi.data(), sys_dim, bath_dim);
  const Vector c = m.transpose() * enc.conjugate();
  return c.squaredNorm();
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

// Ancilla-circuit leakage measurement of one block (pure-state modes).
// forced_code: postselect semantics — project onto the code outcome and
// return its Born weight instead of sampling.
struct AncillaStep {
  int outcome = 1;
  double p_code = 1.0;
};

AncillaStep ancilla_measure_block(const Context& ctx, Vector& psi, int block,
                                  std::mt19937_64* gen, bool forced_code) {
  const int n = static_cast<int>(psi.size());
  Vector apsi = Vector::Zero(2 * n);
  for (int i = 0; i < n; ++i) apsi(2 * i) = psi(i);  // append ancilla |0> (fastest index)
  apsi = ctx.anc_cnots[2 * block + 1] * (ctx.anc_cnots[2 * block] * apsi);

  double p1 = 0.0;
  for (int i = 1; i < 2 * n; i += 2) p1 += std::norm(apsi(i));

  AncillaStep out;
  out.p_code = p1;
  if (forced_code) {
    out.outcome = 1;
    if (p1 <= 0.0) return out;  // caller aborts on zero survival
    for (int i = 0; i < n; ++i) psi(i) = apsi(2 * i + 1);
    psi /= std::sqrt(p1);
    return out;
  }
  out.outcome = (rng::uniform01(*gen) < p1) ? 1 : 0;
  if (out.outcome == 1) {
    for (int i = 0; i < n; ++i) psi(i) = apsi(2 * i + 1);
  } else {
    for (int i = 0; i < n; ++i) psi(i) = apsi(2 * i);
  }
  const double nrm = psi.norm();
  if (nrm == 0.0) throw std::runtime_error("ancilla measurement: zero-norm branch");
  psi /= nrm;
  return out;
}

// ---- non-selective run ----

RunResult run_nonselective(const Context& ctx, const SchemeConfig& cfg) {
  RunResult r;
  const int n_steps = cfg.zeno_count;
  r.leak_weight_series.resize(n_steps, 0.0);
  r.wall_record.resize(n_steps, 0.0);

  Matrix rho = ctx.psi0.amplitudes * ctx.psi0.amplitudes.adjoint();
  const Matrix& u = ctx.u_step.entries;

  auto measure_blocks = [&](Matrix& m) { m = m.cwiseProduct(ctx.meas_mask); };
  auto stabilizer_check = [&](Matrix& m) {
    const int n = static_cast<int>(m.rows());
    const Matrix pp = 0.5 * (Matrix::Identity(n, n) + ctx.stabilizer);
    const Matrix pm = 0.5 * (Matrix::Identity(n, n) - ctx.stabilizer);
    const Matrix minus = pm * m * pm;
    r.detect_flags += minus.trace().real();
    m = pp * m * pp + minus;
  };

  for (int k = 0; k < n_steps; ++k) {
    rho = u * rho * u.adjoint();
    r.leak_weight_series[k] = leak_weight_of(ctx, rho);
    const bool stab_due = ctx.stab_every > 0 && (k + 1) % ctx.stab_every == 0;
    if (ctx.measured) {
      if (stab_due && cfg.stabilizer_order == StabilizerOrder::outer_first) stabilizer_check(rho);
      measure_blocks(rho);
      if (stab_due && cfg.stabilizer_order == StabilizerOrder::inner_first) stabilizer_check(rho);
    }
    if (cfg.qecc3_correct_every_k > 0 && (k + 1) % cfg.qecc3_correct_every_k == 0 &&
        k + 1 < n_steps) {
      const auto res = codes::qecc3_syndrome_correct(DensityMatrix(ctx.dims, rho));
      rho = res.state.entries;
    }
    const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr_err > kTraceTol) {
      r.aborted = true;
      r.abort_reason = "norm drift: |tr(rho) - 1| = " + std::to_string(tr_err) +
                       " at step " + std::to_string(k + 1);
      return r;
    }
    r.wall_record[k] = now_seconds();
  }

  if (ctx.inject.size() > 0) rho = ctx.inject * rho * ctx.inject.adjoint();
  if (ctx.layout.scheme == Scheme::DFS_ZENO_X_QECC3) {
    const auto res = codes::qecc3_syndrome_correct(DensityMatrix(ctx.dims, rho));
    rho = res.state.entries;
  }

  const DensityMatrix rho_full(ctx.dims, std::move(rho));
  std::vector<int> sys_factors(ctx.layout.n_physical);
  for (int k = 0; k < ctx.layout.n_physical; ++k) sys_factors[k] = k;
  const DensityMatrix rho_sys = ops::partial_trace(rho_full, sys_factors);
  r.final_fidelity =
      std::real(Complex(ctx.enc_sys.adjoint() * rho_sys.entries * ctx.enc_sys));
  r.logical_phase_error =
      std::real(Complex(ctx.enc_perp_sys.adjoint() * rho_sys.entries * ctx.enc_perp_sys));
  r.final_leak_weight = leak_weight_of(ctx, rho_full.entries);
  r.survival_probability = 1.0 - r.final_leak_weight;
  return r;
}

// ---- post-selected run ----

RunResult run_postselect(const Context& ctx, const SchemeConfig& cfg) {
  RunResult r;
  const int n_steps = cfg.zeno_count;
  r.leak_weight_series.resize(n_steps, 0.0);
  r.wall_record.resize(n_steps, 0.0);

  Vector psi = ctx.psi0.amplitudes;
  const Matrix& u = ctx.u_step.entries;
  double survival = 1.0;
  std::mt19937_64 gen = rng::stream(cfg.seed, 0);  // stabilizer sampling only

  auto abort_zero = [&](int step) {
    r.aborted = true;
    r.abort_reason = "postselect: survival probability hit zero at step " +
                     std::to_string(step + 1);
    r.survival_probability = 0.0;
  };

  for (int k = 0; k < n_steps; ++k) {
    psi = u * psi;
    r.leak_weight_series[k] = leak_weight_of(ctx, psi);
    const bool stab_due = ctx.stab_every > 0 && (k + 1) % ctx.stab_every == 0;

    auto project_code = [&]() -> bool {
      if (cfg.measurement_impl == MeasurementImpl::ancilla_xor) {
        for (int b = 0; b < ctx.layout.n_blocks; ++b) {
          const AncillaStep st = ancilla_measure_block(ctx, psi, b, nullptr, true);
          survival *= st.p_code;
          if (st.p_code <= 0.0) return false;
        }
        return true;
      }
      const Vector proj = ctx.code_diag.cwiseProduct(psi);
      const double w = proj.squaredNorm();
      survival *= w;
      if (w <= 0.0) return false;
      psi = proj / std::sqrt(w);
      return true;
    };
    auto sample_stabilizer = [&]() {
      const Vector minus = 0.5 * (psi - ctx.stabilizer * psi);
      const double pm = minus.squaredNorm();
      if (rng::uniform01(gen) < pm) {
        r.detect_flags += 1.0;
        psi = minus / std::sqrt(pm);
      } else {
        const Vector plus = 0.5 * (psi + ctx.stabilizer * psi);
        psi = plus / plus.norm();
      }
    };

    if (ctx.measured) {
      if (stab_due && cfg.stabilizer_order == StabilizerOrder::outer_first) sample_stabilizer();
      if (!project_code()) {
        abort_zero(k);
        return r;
      }
      if (stab_due && cfg.stabilizer_order == StabilizerOrder::inner_first) sample_stabilizer();
    }
    if (std::abs(psi.norm() - 1.0) > kNormTol) {
      r.aborted = true;
      r.abort_reason = "norm drift exceeded tolerance at step " + std::to_string(k + 1);
      return r;
    }
    r.wall_record[k] = now_seconds();
  }

  if (ctx.inject.size() > 0) psi = ctx.inject * psi;

  if (ctx.layout.scheme == Scheme::DFS_ZENO_X_QECC3) {
    // The final corrective measurement is applied as the non-selective
    // recovery channel; decoding is linear, so observables are unaffected
    // by not sampling a concrete syndrome here.
    Matrix rho = psi * psi.adjoint();
    const auto res = codes::qecc3_syndrome_correct(DensityMatrix(ctx.dims, std::move(rho)));
    const DensityMatrix rho_full = res.state;
    std::vector<int> sys_factors(ctx.layout.n_physical);
    for (int k = 0; k < ctx.layout.n_physical; ++k) sys_factors[k] = k;
    const DensityMatrix rho_sys = ops::partial_trace(rho_full, sys_factors);
    r.final_fidelity =
        std::real(Complex(ctx.enc_sys.adjoint() * rho_sys.entries * ctx.enc_sys));
    r.logical_phase_error =
        std::real(Complex(ctx.enc_perp_sys.adjoint() * rho_sys.entries * ctx.enc_perp_sys));
    r.final_leak_weight = leak_weight_of(ctx, rho_full.entries);
  } else {
    r.final_fidelity = pure_system_overlap(psi, ctx.enc_sys, ctx.sys_dim, ctx.bath_dim);
    r.logical_phase_error =
        pure_system_overlap(psi, ctx.enc_perp_sys, ctx.sys_dim, ctx.bath_dim);
    r.final_leak_weight = leak_weight_of(ctx, psi);
  }
  r.survival_probability = survival;
  return r;
}

// ---- trajectory run ----

RunResult run_trajectory(const Context& ctx, const SchemeConfig& cfg) {
  RunResult r;
  const int n_steps = cfg.zeno_count;
  const int n_samples = cfg.samples;
  r.leak_weight_series.resize(n_steps, 0.0);
  r.wall_record.resize(n_steps, 0.0);

  const Matrix& u = ctx.u_step.entries;
  double sum_fid = 0.0, sum_fid2 = 0.0, sum_leak = 0.0, sum_leak2 = 0.0;
  double sum_res = 0.0, sum_flags = 0.0;
  int never_leaked = 0;

  for (int sample = 0; sample < n_samples; ++sample) {
    std::mt19937_64 gen = rng::stream(cfg.seed, static_cast<std::uint64_t>(sample));
    Vector psi = ctx.psi0.amplitudes;
    bool leaked_ever = false;

    for (int k = 0; k < n_steps; ++k) {
      psi = u * psi;
      r.leak_weight_series[k] += leak_weight_of(ctx, psi) / n_samples;
      const bool stab_due = ctx.stab_every > 0 && (k + 1) % ctx.stab_every == 0;

      auto measure_blocks = [&]() {
        if (cfg.measurement_impl == MeasurementImpl::ancilla_xor) {
          for (int b = 0; b < ctx.layout.n_blocks; ++b) {
            const AncillaStep st = ancilla_measure_block(ctx, psi, b, &gen, false);
            if (st.outcome == 0) leaked_ever = true;
          }
          return;
        }
        for (int b = 0; b < ctx.layout.n_blocks; ++b) {
          const Vector code_branch = ctx.block_code_diag[b].cwiseProduct(psi);
          const Vector leak_branch = psi - code_branch;
          const double pl = leak_branch.squaredNorm();
          if (rng::uniform01(gen) < pl) {
            psi = leak_branch / std::sqrt(pl);
            leaked_ever = true;
          } else {
            psi = code_branch / code_branch.norm();
          }
        }
      };
      auto sample_stabilizer = [&]() {
        const Vector minus = 0.5 * (psi - ctx.stabilizer * psi);
        const double pm = minus.squaredNorm();
        if (rng::uniform01(gen) < pm) {
          sum_flags += 1.0;
          psi = minus / std::sqrt(pm);
        } else {
          const Vector plus = 0.5 * (psi + ctx.stabilizer * psi);
          psi = plus / plus.norm();
        }
      };

      if (ctx.measured) {
        if (stab_due && cfg.stabilizer_order == StabilizerOrder::outer_first) sample_stabilizer();
        measure_blocks();
        if (stab_due && cfg.stabilizer_order == StabilizerOrder::inner_first) sample_stabilizer();
      }
      if (std::abs(psi.norm() - 1.0) > kNormTol) {
        r.aborted = true;
        r.abort_reason = "norm drift exceeded tolerance in sample " + std::to_string(sample) +
                         " at step " + std::to_string(k + 1);
        return r;
      }
      if (sample == 0) r.wall_record[k] = now_seconds();
    }

    if (ctx.inject.size() > 0) psi = ctx.inject * psi;
    if (ctx.layout.scheme == Scheme::DFS_ZENO_X_QECC3) {
      const auto res = codes::qecc3_syndrome_correct(PureState(ctx.dims, psi), gen);
      psi = res.state.amplitudes;
    }

    const double fid = pure_system_overlap(psi, ctx.enc_sys, ctx.sys_dim, ctx.bath_dim);
    const double res = pure_system_overlap(psi, ctx.enc_perp_sys, ctx.sys_dim, ctx.bath_dim);
    const double leak = leak_weight_of(ctx, psi);
    sum_fid += fid;
    sum_fid2 += fid * fid;
    sum_res += res;
    sum_leak += leak;
    sum_leak2 += leak * leak;
    if (!leaked_ever) ++never_leaked;
  }

  const double ns = static_cast<double>(n_samples);
  r.final_fidelity = sum_fid / ns;
  r.logical_phase_error = sum_res / ns;
  r.final_leak_weight = sum_leak / ns;
  r.survival_probability = static_cast<double>(never_leaked) / ns;
  r.detect_flags = sum_flags / ns;
  if (n_samples > 1) {
    const double var_fid = (sum_fid2 - ns * r.final_fidelity * r.final_fidelity) / (ns - 1.0);
    const double var_leak =
        (sum_leak2 - ns * r.final_leak_weight * r.final_leak_weight) / (ns - 1.0);
    r.fidelity_std_error = std::sqrt(std::max(0.0, var_fid) / ns);
    r.leak_std_error = std::sqrt(std::max(0.0, var_leak) / ns);
  }
  return r;
}

}  // namespace

// ---- run_scheme ----

RunResult run_scheme(const LogicalQubit& q, const ModelParams& model, const SchemeConfig& cfg) {
  const Context ctx = build_context(q, model, cfg);
  switch (cfg.mode) {
    case Mode::nonselective: return run_nonselective(ctx, cfg);
    case Mode::postselect: return run_postselect(ctx, cfg);
    case Mode::trajectory: return run_trajectory(ctx, cfg);
  }
  throw std::logic_error("run_scheme: unreachable");
}

// ---- residual_phase_error ----

namespace {

double residual_from_two_qubit_rho(const Matrix& rho, const LogicalQubit& q) {
  const PureState perp = codes::dfs_encode(q.orthogonal());
  const Complex v = perp.amplitudes.adjoint() * rho * perp.amplitudes;
  return v.real();
}

}  // namespace

double residual_phase_error(const PureState& s, const LogicalQubit& q) {
  if (s.dims.size() == 2) {
    const PureState perp = codes::dfs_encode(q.orthogonal());
    return ops::fidelity(perp, s);
  }
  return residual_phase_error(to_density(s), q);
}

double residual_phase_error(const DensityMatrix& s, const LogicalQubit& q) {
  if (s.dims.size() < 2 || s.dims[0] != 2 || s.dims[1] != 2)
    throw std::invalid_argument("residual_phase_error: first two factors must be qubits");
  if (s.dims.size() == 2) return residual_from_two_qubit_rho(s.entries, q);
  const DensityMatrix reduced = ops::partial_trace(s, {0, 1});
  return residual_from_two_qubit_rho(reduced.entries, q);
}

}  // namespace zenosim::engine
