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

// zenosim CLI: run / sweep / verify.
//
// Exit codes: 0 success, 1 verify-property failure, 2 configuration or usage
// error, 3 numerical abort.

#include "zenosim/config.hpp"
#include "zenosim/verify.hpp"
#include "zenosim/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalAbort = 3;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string mode;
  bool quiet = false;
  int jobs = 0;
};

// Final output location: --out DIR relocates the configured (or default)
// filename into DIR.
std::string resolve_out_path(const CommonFlags& flags, const std::string& configured,
                             const std::string& fallback) {
  namespace fs = std::filesystem;
  const std::string name = configured.empty() ? fallback : configured;
  if (flags.out_dir.empty()) return name;
  return (fs::path(flags.out_dir) / fs::path(name).filename()).string();
}

// Load the config and apply flag/environment overrides (seed priority:
// flag > file > SIM_SEED > 0; --mode overrides the file).
zenosim::config::RunConfigFile load_resolved(const CommonFlags& flags) {
  using zenosim::config::ConfigError;
  if (flags.config_path.empty()) throw ConfigError("config: --config PATH is required");
  zenosim::config::RunConfigFile cfg = zenosim::config::load_config_file(flags.config_path);
  const std::uint64_t* flag_seed = flags.seed_given ? &flags.seed : nullptr;
  cfg.scheme.seed = zenosim::config::resolve_seed(cfg, flag_seed, std::getenv("SIM_SEED"));
  cfg.seed_in_file = true;  // records embed the resolved seed
  if (!flags.mode.empty()) {
    try {
      cfg.scheme.mode = zenosim::engine::mode_from_name(flags.mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--mode: ") + e.what());
    }
  }
  return cfg;
}

int cmd_run(const CommonFlags& flags) {
  using namespace zenosim;
  config::RunConfigFile cfg = load_resolved(flags);
  try {
    engine::validate(cfg.scheme);
  } catch (const std::invalid_argument& e) {
    throw config::ConfigError(e.what());
  }
  if (!cfg.output.format.empty() && cfg.output.format != "json") {
    std::fprintf(stderr, "error: output.format: run emits a JSON record\n");
    return kExitConfigError;
  }

  const engine::RunResult result = engine::run_scheme(cfg.logical, cfg.model, cfg.scheme);
  const std::string path = resolve_out_path(flags, cfg.output.path, "run_result.json");
  config::write_atomic(path, config::result_record_json(cfg, result));

  if (result.aborted) {
    std::fprintf(stderr, "error: run aborted: %s\n", result.abort_reason.c_str());
    std::fprintf(stderr, "record written to %s\n", path.c_str());
    return kExitNumericalAbort;
  }
  if (!flags.quiet) {
    std::printf("scheme=%s mode=%s N=%d T0=%g seed=%llu\n",
                codes::scheme_name(cfg.scheme.layout.scheme),
                engine::mode_name(cfg.scheme.mode), cfg.scheme.zeno_count,
                cfg.scheme.total_time, static_cast<unsigned long long>(cfg.scheme.seed));
    std::printf("final_fidelity=%.12g final_leak_weight=%.12g survival=%.12g\n",
                result.final_fidelity, result.final_leak_weight,
                result.survival_probability);
    std::printf("record written to %s\n", path.c_str());
  }
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags) {
  using namespace zenosim;
  config::RunConfigFile cfg = load_resolved(flags);
  if (!cfg.sweep.present)
    throw config::ConfigError("sweep: config has no sweep section");
  if (!cfg.output.format.empty() && cfg.output.format != "csv") {
    std::fprintf(stderr, "error: output.format: sweep emits a CSV table\n");
    return kExitConfigError;
  }

  const models::ModelBParams* model_b = std::get_if<models::ModelBParams>(&cfg.model);

  if (cfg.sweep.compare) {
    if (model_b == nullptr)
      throw config::ConfigError("sweep.compare: requires a type \"B\" model section");
    const auto rows = metrics::compare_schemes(*model_b, cfg.scheme, cfg.logical);
    const std::string path = resolve_out_path(flags, cfg.output.path, "scheme_compare.csv");
    config::write_atomic(path, config::compare_table_csv(rows, cfg));
    if (!flags.quiet) {
      std::printf("%-4s %-26s %-10s %-14s %-14s\n", "rank", "scheme", "qubits", "fidelity",
                  "leak");
      for (const auto& row : rows)
        std::printf("%-4d %-26s %-10d %-14.6g %-14.6g%s\n", row.rank,
                    codes::scheme_name(row.scheme), row.qubit_cost, row.final_fidelity,
                    row.final_leak_weight, row.aborted ? "  [aborted]" : "");
      std::printf("table written to %s\n", path.c_str());
    }
    for (const auto& row : rows)
      if (row.aborted) {
        std::fprintf(stderr, "error: scheme %s aborted: %s\n",
                     codes::scheme_name(row.scheme), row.abort_reason.c_str());
        return kExitNumericalAbort;
      }
    return kExitOk;
  }

  if (model_b == nullptr)
    throw config::ConfigError("sweep: requires a type \"B\" model section");
  metrics::SweepSpec spec;
  spec.variable = cfg.sweep.variable;
  spec.values = cfg.sweep.values;
  spec.base_model = *model_b;
  spec.base_cfg = cfg.scheme;
  spec.logical = cfg.logical;
  spec.schemes = cfg.sweep.schemes;
  spec.jobs = flags.jobs;
  try {
    metrics::validate(spec);
  } catch (const std::invalid_argument& e) {
    throw config::ConfigError(e.what());
  }

  const auto rows = metrics::sweep(spec);
  const std::string table_path = resolve_out_path(flags, cfg.output.path, "sweep.csv");
  config::write_atomic(table_path, config::sweep_table_csv(spec, rows, cfg));
  if (!flags.quiet) std::printf("table written to %s (%zu rows)\n", table_path.c_str(), rows.size());

  bool any_aborted = false;
  for (const auto& row : rows) any_aborted = any_aborted || row.result.aborted;

  if (cfg.sweep.fit) {
    for (codes::Scheme s : spec.schemes) {
      std::vector<std::pair<double, double>> points;
      for (const auto& row : rows)
        if (row.scheme == s && !row.result.aborted)
          points.emplace_back(row.value, row.result.final_leak_weight);
      metrics::FitResult fit;
      try {
        fit = metrics::fit_leak_scaling(points);
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: fit for %s failed: %s\n", codes::scheme_name(s), e.what());
        return kExitNumericalAbort;
      }
      const std::string fit_path =
          table_path + ".fit." + codes::scheme_name(s) + ".json";
      config::write_atomic(fit_path, config::fit_record_json(fit, s, spec, cfg));
      if (!flags.quiet)
        std::printf("fit %s: exponent=%.6g r_squared=%.6g (%zu points, %zu floored) -> %s\n",
                    codes::scheme_name(s), fit.exponent, fit.r_squared, fit.points.size(),
                    fit.floored_points.size(), fit_path.c_str());
    }
  }

  if (any_aborted) {
    for (const auto& row : rows)
      if (row.result.aborted)
        std::fprintf(stderr, "error: sweep point %s=%g (%s) aborted: %s\n",
                     metrics::sweep_variable_name(spec.variable), row.value,
                     codes::scheme_name(row.scheme), row.result.abort_reason.c_str());
    return kExitNumericalAbort;
  }
  return kExitOk;
}

int cmd_verify(const std::string& inject_fault, bool quiet) {
  using namespace zenosim;
  verify::VerifyOptions options;
  options.inject_fault = inject_fault;
  const auto results = verify::run_all(options);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    if (!quiet || !r.passed)
      std::printf("[%s] %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                  r.seconds, r.passed ? "" : ": ", r.passed ? "" : r.detail.c_str());
  }
  if (!all_passed) {
    for (const auto& r : results)
      if (!r.passed) {
        std::fprintf(stderr, "error: property '%s' failed\n", r.name.c_str());
        break;
      }
    return kExitVerifyFailure;
  }
  if (!quiet) std::printf("all %zu properties passed\n", results.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenosim — two-qubit DFS / Zeno / concatenated-code decoherence simulator"};
  app.set_version_flag("--version", std::string(zenosim::kVersion));
  app.require_subcommand(1);

  CommonFlags flags;
  std::string inject_fault;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* copt = sub->add_option("--config", flags.config_path, "JSON config file");
    if (needs_config) copt->required();
    sub->add_option("--out", flags.out_dir, "output directory (overrides output.path dir)");
    sub->add_option("--seed", flags.seed, "RNG seed (overrides config file and SIM_SEED)")
        ->each([&](const std::string&) { flags.seed_given = true; });
    sub->add_option("--mode", flags.mode,
                    "measurement mode: nonselective | trajectory | postselect");
    sub->add_flag("--quiet", flags.quiet, "suppress the human-readable summary");
  };

  CLI::App* run = app.add_subcommand("run", "execute one scheme run from a config");
  add_common(run, true);

  CLI::App* sweep = app.add_subcommand("sweep", "execute a parameter sweep or scheme comparison");
  add_common(sweep, true);
  sweep->add_option("--jobs", flags.jobs, "concurrent sweep runs (0 = all cores)");

  CLI::App* verify = app.add_subcommand("verify", "run the built-in property suite");
  verify->add_flag("--quiet", flags.quiet, "print failures only");
  verify->add_option("--inject-fault", inject_fault,
                     "test harness: corrupt the named property's check")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    return cmd_verify(inject_fault, flags.quiet);
  } catch (const zenosim::config::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumericalAbort;
  }
}
