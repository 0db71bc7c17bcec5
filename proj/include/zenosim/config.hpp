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

// config.hpp — JSON run configurations and machine-readable result records.
//
// Config documents have a fixed schema with four sections:
//
//   {
//     "model":   { "type": "A" | "B", ...params..., "bath": {...} },
//     "scheme":  { "scheme": "DFS_ZENO", "total_time": 20.0, ... },
//     "logical": { "alpha": [re, im], "beta": [re, im] },
//     "sweep":   { "variable": "N", "values": [...], "schemes": [...],
//                  "fit": true }            // optional; or {"compare": true}
//     "output":  { "path": "...", "format": "json" | "csv" }   // optional
//   }
//
// Every section and field is optional except that "model.type" selects the
// model parameter set; omitted fields take the documented defaults.  Unknown
// keys are errors (no silent typo absorption); diagnostics carry the full
// field path.  Complex numbers are written as [re, im] and may be given as a
// bare number (imaginary part zero) on input.
//
// parse -> serialize -> parse is the identity on domain objects.

#pragma once

#include "zenosim/metrics.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zenosim::config {

// Configuration or validation problem; the message names the offending field
// path and the violated constraint.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SweepSection {
  bool present = false;
  bool compare = false;  // run the scheme comparison instead of a sweep
  metrics::SweepVariable variable = metrics::SweepVariable::N;
  std::vector<double> values;
  std::vector<codes::Scheme> schemes = {codes::Scheme::DFS_ZENO};
  bool fit = false;  // fit a power law per scheme series (leak vs value)
};

struct OutputSection {
  std::string path;    // empty: command-specific default filename
  std::string format;  // "json" | "csv"; empty: command-specific default
};

struct RunConfigFile {
  engine::ModelParams model = models::ModelBParams{};
  engine::SchemeConfig scheme;
  codes::LogicalQubit logical;
  SweepSection sweep;
  OutputSection output;
  bool seed_in_file = false;  // whether the document carried scheme.seed
};

// ---- parsing & serialization ----

RunConfigFile parse_config(const std::string& json_text);  // throws ConfigError
RunConfigFile load_config_file(const std::string& path);   // throws ConfigError

// Canonical JSON for a config (all fields explicit); round-trips through
// parse_config bit-exactly.
std::string serialize_config(const RunConfigFile& cfg);

// Seed priority: command-line flag > config file > SIM_SEED environment
// variable > 0.  `flag_seed` is null when no flag was given; `env_value` is
// the raw environment string (null when unset, parse errors rejected).
std::uint64_t resolve_seed(const RunConfigFile& cfg, const std::uint64_t* flag_seed,
                           const char* env_value);

// ---- result records ----

// Self-reproducing single-run record: artifact version, resolved seed, the
// full resolved config, and the run result.  Wall-clock data lives in a
// separate optional "timing" field so that records are otherwise
// byte-identical across reruns.
std::string result_record_json(const RunConfigFile& resolved,
                               const engine::RunResult& result,
                               bool include_timing = true);

// Fit record for one fitted sweep series.
std::string fit_record_json(const metrics::FitResult& fit, codes::Scheme scheme,
                            const metrics::SweepSpec& spec,
                            const RunConfigFile& resolved);

// ---- CSV tables (header row, RFC-4180 quoting) ----

// Quote a field per RFC 4180 (quotes doubled; quoting applied when the field
// contains a comma, quote, or line break).
std::string csv_field(const std::string& raw);

// Sweep table: one row per (scheme, value); the trailing `config` column
// embeds the fully resolved single-run config that reproduces the row.
std::string sweep_table_csv(const metrics::SweepSpec& spec,
                            const std::vector<metrics::SweepRow>& rows,
                            const RunConfigFile& resolved);

// Comparison table: ranked rows with qubit costs; same embedded-config column.
std::string compare_table_csv(const std::vector<metrics::CompareRow>& rows,
                              const RunConfigFile& resolved);

// ---- output files ----

// Write atomically: temp file in the target directory, then rename.  Parent
// directories are created as needed.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace zenosim::config
