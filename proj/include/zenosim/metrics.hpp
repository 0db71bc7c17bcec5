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

// metrics.hpp — Parameter sweeps, power-law fits, and scheme comparisons.

#pragma once

#include "zenosim/zeno.hpp"

#include <utility>

namespace zenosim::metrics {

// ---- sweeps ----

enum class SweepVariable {
  N,               // zeno_count (values must be positive integers)
  delta_eps,       // epsilon2 = epsilon1 + value
  delta_lambda_z,  // lambda2_z = lambda1_z + value
  lambda_plus,     // lambda1_plus = lambda2_plus = value (real)
  T0               // total_time
};

const char* sweep_variable_name(SweepVariable v);
SweepVariable sweep_variable_from_name(const std::string& name);  // throws on unknown

struct SweepSpec {
  SweepVariable variable = SweepVariable::N;
  std::vector<double> values;  // nonempty, strictly monotone
  models::ModelBParams base_model;
  engine::SchemeConfig base_cfg;
  codes::LogicalQubit logical;
  std::vector<codes::Scheme> schemes = {codes::Scheme::DFS_ZENO};
  int jobs = 0;  // concurrent runs; 0 = number of available cores
};

void validate(const SweepSpec& spec);

struct SweepRow {
  codes::Scheme scheme = codes::Scheme::DFS_ZENO;
  double value = 0.0;
  engine::RunResult result;
};

// One run per (scheme, value).  Rows are ordered by (scheme list order,
// value list order) regardless of completion order, so identical specs
// produce bit-identical tables.  Aborted runs are carried as flagged rows.
std::vector<SweepRow> sweep(const SweepSpec& spec);

// Materialize the model/config for one sweep point (also used to embed a
// self-reproducing config in result tables).
std::pair<models::ModelBParams, engine::SchemeConfig> sweep_point(
    const SweepSpec& spec, codes::Scheme scheme, double value);

// Normalize a base config for one scheme: layout from the scheme, stabilizer
// cadence defaults, correction cadence restricted to QECC3, injection block
// clamped into range.  Applied to every run launched by sweep() and
// compare_schemes().
engine::SchemeConfig adapt_for_scheme(engine::SchemeConfig cfg, codes::Scheme s);

// ---- power-law fitting ----

struct FitResult {
  double exponent = 0.0;   // slope of the least-squares line in log-log space
  double intercept = 0.0;  // log-space intercept
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;          // points used
  std::vector<std::pair<double, double>> floored_points;  // flagged, excluded
};

// Least-squares fit of log(y) against log(x).  Requires >= 4 points with
// strictly positive coordinates; throws std::invalid_argument otherwise.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

// Fit pipeline for leak series: values below 1e-14 are floored to 1e-14,
// flagged in FitResult::floored_points, and excluded from the fit.
FitResult fit_leak_scaling(const std::vector<std::pair<double, double>>& points);

inline constexpr double kFitLeakFloor = 1e-14;

// ---- scheme comparison ----

struct CompareRow {
  int rank = 0;  // 1 = highest final fidelity
  codes::Scheme scheme = codes::Scheme::BARE;
  int qubit_cost = 0;
  double final_fidelity = 0.0;
  double final_leak_weight = 0.0;
  double residual_phase_error = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

// Runs every scheme on the identical model/config/seed and returns rows
// ranked by final fidelity (descending).  Per-scheme adjustments:
//   * the layout always comes from the scheme itself;
//   * inject_z_block >= 0 injects one logical phase error into each scheme
//     (clamped to the scheme's last block; BARE takes a physical sigma_z,
//     Duan-Guo its own logical phase flip);
//   * DFS_ZENO_X_DETECT2_ZENO defaults its stabilizer cadence to every step;
//   * qecc3_correct_every_k applies only to the QECC3 scheme.
std::vector<CompareRow> compare_schemes(const models::ModelBParams& model,
                                        const engine::SchemeConfig& base_cfg,
                                        const codes::LogicalQubit& q);

}  // namespace zenosim::metrics
