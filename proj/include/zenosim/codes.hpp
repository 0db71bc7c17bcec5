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

// codes.hpp — Encodings and decoders.
//
// The inner code is the two-qubit collective-dephasing DFS: a logical qubit
// alpha|0> + beta|1> is stored as alpha|01> + beta|10|.  Weight outside
// Span{|01>, |10>} is "leakage" (on Span{|00>, |11>}).
//
// Logical operators on a DFS block:
//   Z~ = |01><01| - |10><10|   (realized physically by sigma_z on the first
//                               qubit, up to a global phase on the code space)
//   X~ = |01><10| + |10><01|   (realized physically by sigma_x ⊗ sigma_x,
//                               whose restriction to the code space is X~)
//
// Outer codes are concatenated over DFS blocks using the block basis
// |+~> = (|01> + |10>)/sqrt(2), |-~> = (|01> - |10>)/sqrt(2):
//   * qecc3:   phase-flip repetition code, |0>_L = |+~+~+~>, |1>_L = |-~-~-~>;
//              two X~X~ stabilizer parities locate any single-block Z~ error.
//   * detect2: two-block detection code, |0>_L = |+~+~>, |1>_L = |-~-~>;
//              the single X~X~ stabilizer flags (but cannot locate) one Z~.
//
// The Duan-Guo baseline stores the qubit in Span{|0_1_>, |1_0_>} with
// |0_> = (|0>+|1>)/sqrt(2), |1_> = (|0>-|1>)/sqrt(2); it is kept for
// comparison and is not decoherence-free under collective sigma_z coupling.

#pragma once

#include "zenosim/ops.hpp"
#include "zenosim/types.hpp"

#include <random>

namespace zenosim::codes {

// ---- logical qubit ----

struct LogicalQubit {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  double norm_error() const { return std::abs(std::norm(alpha) + std::norm(beta) - 1.0); }
  // Orthogonal logical state (conj(beta), -conj(alpha)); a Z~ error rotates
  // the encoded state toward this component.
  LogicalQubit orthogonal() const { return {std::conj(beta), -std::conj(alpha)}; }
};

void require_normalized(const LogicalQubit& q);

// ---- scheme layouts ----

enum class Scheme {
  BARE,                      // 1 physical qubit, no encoding
  DFS,                       // 2 qubits, DFS encoding, no measurements
  DFS_ZENO,                  // 2 qubits, DFS + repeated leakage measurement
  DFS_ZENO_X_QECC3,          // 6 qubits, 3 DFS blocks + phase-flip repetition
  DFS_ZENO_X_DETECT2_ZENO,   // 4 qubits, 2 DFS blocks + detection stabilizer
  DUAN_GUO                   // 2 qubits, Duan-Guo baseline encoding
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws on unknown name
int qubit_cost(Scheme s);                          // {1, 2, 2, 6, 4, 2}

struct CodeLayout {
  Scheme scheme = Scheme::DFS_ZENO;
  int n_physical = 2;
  int n_blocks = 1;                                // DFS blocks (0 for BARE)
  std::vector<std::pair<int, int>> block_map;      // logical block -> (q1, q2)

  static CodeLayout for_scheme(Scheme s);
};

// ---- syndrome results ----

struct SyndromeResult {
  enum class Outcome {
    no_error,        // qecc3: trivial syndrome
    z_on_block_1,
    z_on_block_2,
    z_on_block_3,
    pass,            // detect2: stabilizer +1
    error_detected   // detect2: stabilizer -1
  };
  Outcome outcome = Outcome::no_error;
};

const char* outcome_name(SyndromeResult::Outcome o);

// ---- DFS ----

PureState dfs_encode(const LogicalQubit& q);  // two qubits, alpha|01> + beta|10>

struct DfsDecode {
  LogicalQubit logical;          // renormalized code-space content
  Eigen::Matrix2cd logical_rho;  // renormalized logical density matrix
  double leak_weight = 0.0;      // weight outside Span{|01>, |10>}
  bool logical_defined = true;   // false when the state is fully outside the code space
};

DfsDecode dfs_decode(const PureState& s);       // s over 2 qubits (+ optional extra factors traced out)
DfsDecode dfs_decode(const DensityMatrix& s);

// ---- outer codes over DFS blocks ----

PureState qecc3_encode(const LogicalQubit& q);    // 6 qubits
PureState detect2_encode(const LogicalQubit& q);  // 4 qubits
PureState duan_guo_encode(const LogicalQubit& q); // 2 qubits

// Encode per layout (BARE -> single-qubit state alpha|0> + beta|1>).
PureState encode(const CodeLayout& layout, const LogicalQubit& q);

// ---- block operators on arbitrary layouts ----
// `dims` is the full factor list of the state the operator acts on; the
// first 2 * n_blocks factors must be the physical qubits in block order.

Operator logical_z(int block, const std::vector<int>& dims);       // sigma_z on first qubit of block
Operator block_xx(int block, const std::vector<int>& dims);        // sigma_x ⊗ sigma_x on block
Operator block_code_projector(int block, const std::vector<int>& dims);  // onto Span{|01>,|10>}
Operator block_leak_projector(int block, const std::vector<int>& dims);  // onto Span{|00>,|11>}

// ---- QECC3 syndrome measurement & correction ----
// Measures the two stabilizers S1 = XX on blocks (1,2) and S2 = XX on
// blocks (2,3); outcomes (s1, s2) map to {(+,+): none, (-,+): block 1,
// (-,-): block 2, (+,-): block 3}; the indicated Z~ correction is applied.

struct Qecc3PureResult {
  PureState state;
  SyndromeResult syndrome;
};

struct Qecc3ChannelResult {
  DensityMatrix state;
  SyndromeResult syndrome;            // most probable branch
  std::array<double, 4> branch_weights{};  // (+,+), (-,+), (-,-), (+,-)
};

// Pure-state version samples the syndrome with the supplied generator
// (deterministic when the input is a syndrome eigenstate).
Qecc3PureResult qecc3_syndrome_correct(const PureState& s, std::mt19937_64& rng);

// Density-matrix version applies the full non-selective recovery channel:
// rho -> sum over syndromes of C_s P_s rho P_s C_s†.
Qecc3ChannelResult qecc3_syndrome_correct(const DensityMatrix& s);

// ---- DETECT2 stabilizer check ----

struct Detect2PureResult {
  PureState state;
  SyndromeResult syndrome;
  double p_detect = 0.0;  // Born probability of the error branch, pre-sampling
};

struct Detect2ChannelResult {
  DensityMatrix state;
  SyndromeResult syndrome;     // most probable branch
  double flag_weight = 0.0;    // weight of the error-detected branch
};

Detect2PureResult detect2_check(const PureState& s, std::mt19937_64& rng);
Detect2ChannelResult detect2_check(const DensityMatrix& s);

}  // namespace zenosim::codes
