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

// zeno.hpp — The dynamical core: exact unitary evolution for T0/N
// interleaved with projective code-space measurements, in non-selective,
// trajectory and post-selected modes; runs each protection scheme end to
// end.
//
// The bath is NOT reset between steps: one continuous system⊗bath unitary
// is chopped into N pieces and only the qubits are measured.  Frequent
// measurement freezes leakage out of the code space (quantum Zeno effect):
// per-interval leakage scales as (T0/N)^2, so total leakage falls off as
// 1/N, while phase errors inside the code space accrue unimpeded.

#pragma once

#include "zenosim/codes.hpp"
#include "zenosim/models.hpp"
#include "zenosim/ops.hpp"
#include "zenosim/types.hpp"

#include <optional>
#include <variant>

namespace zenosim::engine {

// ---- configuration ----

enum class Mode { nonselective, trajectory, postselect };
enum class MeasurementImpl { projector, ancilla_xor };
// Ordering of per-step measurements for the DETECT2 scheme: leakage
// (inner-code) measurement first, or the outer stabilizer first.
enum class StabilizerOrder { inner_first, outer_first };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);
const char* measurement_impl_name(MeasurementImpl m);
MeasurementImpl measurement_impl_from_name(const std::string& name);
const char* stabilizer_order_name(StabilizerOrder o);
StabilizerOrder stabilizer_order_from_name(const std::string& name);

struct SchemeConfig {
  codes::CodeLayout layout = codes::CodeLayout::for_scheme(codes::Scheme::DFS_ZENO);
  double total_time = 20.0;       // T0
  int zeno_count = 1;             // N >= 1; N=1 is plain evolve-then-measure
  int inner_zeno_count = 0;       // N2: outer-stabilizer cadence for DETECT2; 0 disables
  Mode mode = Mode::nonselective;
  int samples = 1;                // trajectory mode only
  std::uint64_t seed = 0;
  MeasurementImpl measurement_impl = MeasurementImpl::projector;
  StabilizerOrder stabilizer_order = StabilizerOrder::inner_first;
  int qecc3_correct_every_k = 0;  // 0: correct once at final time (default)
  int inject_z_block = -1;        // >= 0: apply Z~ to that block after the last
                                  // step, before any final correction/decoding
};

void validate(const SchemeConfig& cfg);

// ---- results ----

struct RunResult {
  double final_fidelity = 0.0;          // <enc(q)| rho_system |enc(q)>, unnormalized
  double final_leak_weight = 0.0;       // weight outside the scheme's code space at T0
  std::vector<double> leak_weight_series;  // per step: leak weight of the
                                           // pre-measurement state (length N)
  double survival_probability = 1.0;    // postselect: product of code weights;
                                        // trajectory: fraction of leak-free samples;
                                        // nonselective: final code weight
  double logical_phase_error = 0.0;     // weight on enc(q_perp), the in-code
                                        // component orthogonal to enc(q)
  double detect_flags = 0.0;            // DETECT2: error-detected events
                                        // (expected weight in nonselective mode,
                                        // mean count per sample in trajectory mode)
  std::vector<double> wall_record;      // per-step wall-clock seconds (not part
                                        // of the determinism contract)
  double fidelity_std_error = 0.0;      // trajectory mode: standard error of mean
  double leak_std_error = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

// ---- operations ----

// Code/leak projectors for a layout with at least one DFS block, over the
// full factor list `dims` (qubits first, baths last): P_code projects every
// block onto Span{|01>,|10>}, P_leak = I - P_code.
std::pair<Operator, Operator> code_projectors(const codes::CodeLayout& layout,
                                              const std::vector<int>& dims);

// Leakage measurement of one DFS block implemented as an explicit circuit:
// the last factor of `s` is an ancilla qubit prepared in |0>; CNOTs from the
// block's two qubits XOR their parity onto the ancilla, the ancilla is
// measured in the computational basis and reset.  Outcome 1 means odd parity
// (code space), outcome 0 means leak space.
struct AncillaXorResult {
  int outcome = 1;
  PureState state;          // ancilla factor reset to |0>
  double p_code = 1.0;      // Born probability of the code outcome
};
AncillaXorResult ancilla_xor_measure(const PureState& s, int block, std::mt19937_64& rng);

// One Zeno step on a density matrix: evolve by u_step, then measure every
// DFS block non-selectively.  Returns the pre-measurement leak weight.
struct StepRecord {
  double leak_weight = 0.0;  // of the pre-measurement state
};
StepRecord zeno_step(DensityMatrix& rho, const Operator& u_step, const codes::CodeLayout& layout);

// Full scheme run.  For multi-block layouts each DFS block owns an
// independent bath factor; Model A/B parameters are replicated per block.
using ModelParams = std::variant<models::ModelAParams, models::ModelBParams>;
RunResult run_scheme(const codes::LogicalQubit& q, const ModelParams& model,
                     const SchemeConfig& cfg);

// Weight of the in-code component orthogonal to dfs_encode(q): the logical
// phase-error content of a DFS block state (any extra factors traced out).
double residual_phase_error(const PureState& s, const codes::LogicalQubit& q);
double residual_phase_error(const DensityMatrix& s, const codes::LogicalQubit& q);

}  // namespace zenosim::engine
