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

// metrics.cpp — sweeps, fits, and scheme comparison.

#include "zenosim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace zenosim::metrics {

using codes::Scheme;

// ---- sweep variable names ----

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::N: return "N";
    case SweepVariable::delta_eps: return "delta_eps";
    case SweepVariable::delta_lambda_z: return "delta_lambda_z";
    case SweepVariable::lambda_plus: return "lambda_plus";
    case SweepVariable::T0: return "T0";
  }
  throw std::logic_error("sweep_variable_name: unreachable");
}

SweepVariable sweep_variable_from_name(const std::string& name) {
  for (SweepVariable v : {SweepVariable::N, SweepVariable::delta_eps,
                          SweepVariable::delta_lambda_z, SweepVariable::lambda_plus,
                          SweepVariable::T0})
    if (name == sweep_variable_name(v)) return v;
  throw std::invalid_argument("unknown sweep variable '" + name + "'");
}

// ---- validation ----

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep.values: must be nonempty");
  for (size_t i = 1; i < spec.values.size(); ++i) {
    const bool incr = spec.values[1] > spec.values[0];
    if ((incr && spec.values[i] <= spec.values[i - 1]) ||
        (!incr && spec.values[i] >= spec.values[i - 1]))
      throw std::invalid_argument("sweep.values: must be strictly monotone");
  }
  if (spec.variable == SweepVariable::N) {
    for (double v : spec.values)
      if (v < 1.0 || v != std::floor(v))
        throw std::invalid_argument("sweep.values: N values must be positive integers");
  }
  if (spec.schemes.empty())
    throw std::invalid_argument("sweep.schemes: must list at least one scheme");
  if (spec.jobs < 0) throw std::invalid_argument("sweep.jobs: must be >= 0");
  codes::require_normalized(spec.logical);
  models::validate(spec.base_model.bath);
}

// ---- sweep point materialization ----

engine::SchemeConfig adapt_for_scheme(engine::SchemeConfig cfg, Scheme s) {
  cfg.layout = codes::CodeLayout::for_scheme(s);
  if (s == Scheme::DFS_ZENO_X_DETECT2_ZENO) {
    if (cfg.inner_zeno_count == 0) cfg.inner_zeno_count = cfg.zeno_count;
  } else {
    cfg.inner_zeno_count = 0;
  }
  if (s != Scheme::DFS_ZENO_X_QECC3) cfg.qecc3_correct_every_k = 0;
  if (cfg.inject_z_block >= 0 && cfg.layout.n_blocks > 0)
    cfg.inject_z_block = std::min(cfg.inject_z_block, cfg.layout.n_blocks - 1);
  return cfg;
}

std::pair<models::ModelBParams, engine::SchemeConfig> sweep_point(const SweepSpec& spec,
                                                                  Scheme scheme,
                                                                  double value) {
  models::ModelBParams model = spec.base_model;
  engine::SchemeConfig cfg = spec.base_cfg;
  switch (spec.variable) {
    case SweepVariable::N:
      cfg.zeno_count = static_cast<int>(value);
      break;
    case SweepVariable::delta_eps:
      model.epsilon2 = model.epsilon1 + value;
      break;
    case SweepVariable::delta_lambda_z:
      model.lambda2_z = model.lambda1_z + value;
      break;
    case SweepVariable::lambda_plus:
      model.lambda1_plus = Complex(value, 0.0);
      model.lambda2_plus = Complex(value, 0.0);
      break;
    case SweepVariable::T0:
      cfg.total_time = value;
      break;
  }
  cfg = adapt_for_scheme(cfg, scheme);
  return {model, cfg};
}

// ---- sweep ----

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  validate(spec);

  struct Task {
    Scheme scheme;
    double value;
  };
  std::vector<Task> tasks;
  for (Scheme s : spec.schemes)
    for (double v : spec.values) tasks.push_back({s, v});

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto [model, cfg] = sweep_point(spec, tasks[i].scheme, tasks[i].value);
      SweepRow row;
      row.scheme = tasks[i].scheme;
      row.value = tasks[i].value;
      row.result = engine::run_scheme(spec.logical, model, cfg);
      rows[i] = std::move(row);
    }
  };

  int jobs = spec.jobs;
  if (jobs == 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

// ---- power-law fitting ----

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4)
    throw std::invalid_argument("fit_power_law: at least 4 points required");
  for (const auto& [x, y] : points)
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument(
          "fit_power_law: coordinates must be strictly positive (log-log fit)");

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw std::invalid_argument("fit_power_law: degenerate abscissae (all x equal)");

  FitResult fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.exponent * std::log(x));
    ss_res += r * r;
  }
  fit.r_squared = (ss_tot > 0.0) ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  fit.points = points;
  return fit;
}

FitResult fit_leak_scaling(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> used, floored;
  for (const auto& [x, y] : points) {
    if (y < kFitLeakFloor)
      floored.emplace_back(x, kFitLeakFloor);
    else
      used.emplace_back(x, y);
  }
  FitResult fit = fit_power_law(used);
  fit.floored_points = std::move(floored);
  return fit;
}

// ---- scheme comparison ----

std::vector<CompareRow> compare_schemes(const models::ModelBParams& model,
                                        const engine::SchemeConfig& base_cfg,
                                        const codes::LogicalQubit& q) {
  static constexpr Scheme kAll[] = {Scheme::BARE,
                                    Scheme::DFS,
                                    Scheme::DFS_ZENO,
                                    Scheme::DFS_ZENO_X_QECC3,
                                    Scheme::DFS_ZENO_X_DETECT2_ZENO,
                                    Scheme::DUAN_GUO};
  std::vector<CompareRow> rows;
  for (Scheme s : kAll) {
    const engine::SchemeConfig cfg = adapt_for_scheme(base_cfg, s);
    const engine::RunResult res = engine::run_scheme(q, model, cfg);
    CompareRow row;
    row.scheme = s;
    row.qubit_cost = codes::qubit_cost(s);
    row.final_fidelity = res.final_fidelity;
    row.final_leak_weight = res.final_leak_weight;
    row.residual_phase_error = res.logical_phase_error;
    row.aborted = res.aborted;
    row.abort_reason = res.abort_reason;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    return a.final_fidelity > b.final_fidelity;
  });
  for (size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
  return rows;
}

}  // namespace zenosim::metrics
