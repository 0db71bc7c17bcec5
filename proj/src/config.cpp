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

// config.cpp — JSON configs, result records, and CSV tables.

#include "zenosim/config.hpp"

#include "zenosim/version.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <set>
#include <sstream>

namespace zenosim::config {

using json = nlohmann::json;
using codes::Scheme;
using models::BathSpec;
using models::ModelAParams;
using models::ModelBParams;

// ---- strict-schema parsing helpers ----

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a JSON object");
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(path + "." + item.key(), "unknown key");
}

double get_double(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Complex get_complex(const json& obj, const std::string& path, const std::string& key,
                    Complex fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  fail(path + "." + key, "expected a number or [re, im] pair");
}

// Wrap an enum-name lookup so the diagnostic carries the field path.
template <typename F>
auto get_enum(const json& obj, const std::string& path, const std::string& key,
              F&& from_name, const std::string& fallback_name) {
  const std::string name = get_string(obj, path, key, fallback_name);
  try {
    return from_name(name);
  } catch (const std::invalid_argument& e) {
    fail(path + "." + key, e.what());
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// ---- section parsers ----

BathSpec parse_bath(const json& obj, const std::string& path) {
  require_object(obj, path);
  reject_unknown_keys(obj, path,
                      {"levels", "omega", "coupling_form", "initial_state", "coherent_alpha",
                       "exchange_form"});
  BathSpec bath;
  bath.levels = get_int(obj, path, "levels", bath.levels);
  bath.omega = get_double(obj, path, "omega", bath.omega);
  bath.coupling_form = get_enum(obj, path, "coupling_form", models::coupling_form_from_name,
                                models::coupling_form_name(bath.coupling_form));
  bath.initial_state = get_enum(obj, path, "initial_state", models::bath_initial_state_from_name,
                                models::bath_initial_state_name(bath.initial_state));
  bath.coherent_alpha = get_complex(obj, path, "coherent_alpha", bath.coherent_alpha);
  bath.exchange_form = get_enum(obj, path, "exchange_form", models::exchange_form_from_name,
                                models::exchange_form_name(bath.exchange_form));
  try {
    models::validate(bath);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return bath;
}

engine::ModelParams parse_model(const json& obj, const std::string& path) {
  require_object(obj, path);
  const std::string type = get_string(obj, path, "type", "B");
  if (type == "A") {
    reject_unknown_keys(obj, path, {"type", "epsilon", "lambda_z", "bath"});
    ModelAParams p;
    p.epsilon = get_double(obj, path, "epsilon", p.epsilon);
    p.lambda_z = get_double(obj, path, "lambda_z", p.lambda_z);
    if (obj.contains("bath")) p.bath = parse_bath(obj.at("bath"), path + ".bath");
    return p;
  }
  if (type == "B") {
    reject_unknown_keys(obj, path,
                        {"type", "epsilon1", "epsilon2", "lambda1_z", "lambda2_z",
                         "lambda1_plus", "lambda2_plus", "bath"});
    ModelBParams p;
    p.epsilon1 = get_double(obj, path, "epsilon1", p.epsilon1);
    p.epsilon2 = get_double(obj, path, "epsilon2", p.epsilon2);
    p.lambda1_z = get_double(obj, path, "lambda1_z", p.lambda1_z);
    p.lambda2_z = get_double(obj, path, "lambda2_z", p.lambda2_z);
    p.lambda1_plus = get_complex(obj, path, "lambda1_plus", p.lambda1_plus);
    p.lambda2_plus = get_complex(obj, path, "lambda2_plus", p.lambda2_plus);
    if (obj.contains("bath")) p.bath = parse_bath(obj.at("bath"), path + ".bath");
    return p;
  }
  fail(path + ".type", "expected \"A\" or \"B\"");
}

engine::SchemeConfig parse_scheme(const json& obj, const std::string& path, bool* seed_in_file) {
  require_object(obj, path);
  reject_unknown_keys(obj, path,
                      {"scheme", "total_time", "zeno_count", "inner_zeno_count", "mode",
                       "samples", "seed", "measurement_impl", "stabilizer_order",
                       "qecc3_correct_every_k", "inject_z_block"});
  engine::SchemeConfig cfg;
  const Scheme scheme = get_enum(obj, path, "scheme", codes::scheme_from_name,
                                 codes::scheme_name(cfg.layout.scheme));
  cfg.layout = codes::CodeLayout::for_scheme(scheme);
  cfg.total_time = get_double(obj, path, "total_time", cfg.total_time);
  cfg.zeno_count = get_int(obj, path, "zeno_count", cfg.zeno_count);
  // The detection scheme checks its stabilizer every step unless told
  // otherwise; an explicit 0 disables the stabilizer entirely.
  if (obj.contains("inner_zeno_count"))
    cfg.inner_zeno_count = get_int(obj, path, "inner_zeno_count", 0);
  else if (scheme == Scheme::DFS_ZENO_X_DETECT2_ZENO)
    cfg.inner_zeno_count = cfg.zeno_count;
  cfg.mode = get_enum(obj, path, "mode", engine::mode_from_name, engine::mode_name(cfg.mode));
  cfg.samples = get_int(obj, path, "samples", cfg.samples);
  if (obj.contains("seed")) {
    const json& v = obj.at("seed");
    if (!v.is_number_unsigned() && !v.is_number_integer())
      fail(path + ".seed", "expected an unsigned integer");
    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
      fail(path + ".seed", "expected an unsigned integer");
    cfg.seed = v.get<std::uint64_t>();
    *seed_in_file = true;
  }
  cfg.measurement_impl =
      get_enum(obj, path, "measurement_impl", engine::measurement_impl_from_name,
               engine::measurement_impl_name(cfg.measurement_impl));
  cfg.stabilizer_order =
      get_enum(obj, path, "stabilizer_order", engine::stabilizer_order_from_name,
               engine::stabilizer_order_name(cfg.stabilizer_order));
  cfg.qecc3_correct_every_k =
      get_int(obj, path, "qecc3_correct_every_k", cfg.qecc3_correct_every_k);
  cfg.inject_z_block = get_int(obj, path, "inject_z_block", cfg.inject_z_block);
  return cfg;
}

codes::LogicalQubit parse_logical(const json& obj, const std::string& path) {
  require_object(obj, path);
  reject_unknown_keys(obj, path, {"alpha", "beta"});
  codes::LogicalQubit q;
  q.alpha = get_complex(obj, path, "alpha", q.alpha);
  q.beta = get_complex(obj, path, "beta", q.beta);
  if (q.norm_error() > 1e-9) fail(path, "|alpha|^2 + |beta|^2 must equal 1");
  return q;
}

SweepSection parse_sweep(const json& obj, const std::string& path) {
  require_object(obj, path);
  reject_unknown_keys(obj, path, {"variable", "values", "schemes", "fit", "compare"});
  SweepSection sw;
  sw.present = true;
  sw.compare = get_bool(obj, path, "compare", false);
  sw.variable = get_enum(obj, path, "variable", metrics::sweep_variable_from_name,
                         metrics::sweep_variable_name(sw.variable));
  if (obj.contains("values")) {
    const json& v = obj.at("values");
    if (!v.is_array()) fail(path + ".values", "expected an array of numbers");
    sw.values.clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        fail(path + ".values[" + std::to_string(i) + "]", "expected a number");
      sw.values.push_back(v[i].get<double>());
    }
  }
  if (obj.contains("schemes")) {
    const json& v = obj.at("schemes");
    if (!v.is_array()) fail(path + ".schemes", "expected an array of scheme names");
    sw.schemes.clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string())
        fail(path + ".schemes[" + std::to_string(i) + "]", "expected a scheme name");
      try {
        sw.schemes.push_back(codes::scheme_from_name(v[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        fail(path + ".schemes[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  sw.fit = get_bool(obj, path, "fit", false);
  return sw;
}

OutputSection parse_output(const json& obj, const std::string& path) {
  require_object(obj, path);
  reject_unknown_keys(obj, path, {"path", "format"});
  OutputSection out;
  out.path = get_string(obj, path, "path", "");
  out.format = get_string(obj, path, "format", "");
  if (!out.format.empty() && out.format != "json" && out.format != "csv")
    fail(path + ".format", "expected \"json\" or \"csv\"");
  return out;
}

}  // namespace

// ---- top-level parse / serialize ----

RunConfigFile parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  require_object(doc, "config");
  reject_unknown_keys(doc, "config", {"model", "scheme", "logical", "sweep", "output"});

  RunConfigFile cfg;
  if (doc.contains("model")) cfg.model = parse_model(doc.at("model"), "model");
  if (doc.contains("scheme"))
    cfg.scheme = parse_scheme(doc.at("scheme"), "scheme", &cfg.seed_in_file);
  if (doc.contains("logical")) cfg.logical = parse_logical(doc.at("logical"), "logical");
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"), "sweep");
  if (doc.contains("output")) cfg.output = parse_output(doc.at("output"), "output");

  // With a sweep/compare section the scheme section is a template that gets
  // materialized per point; validation happens on the materialized configs.
  if (!cfg.sweep.present) {
    try {
      engine::validate(cfg.scheme);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return cfg;
}

RunConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json bath_json(const BathSpec& bath) {
  return json{{"levels", bath.levels},
              {"omega", bath.omega},
              {"coupling_form", models::coupling_form_name(bath.coupling_form)},
              {"initial_state", models::bath_initial_state_name(bath.initial_state)},
              {"coherent_alpha", complex_json(bath.coherent_alpha)},
              {"exchange_form", models::exchange_form_name(bath.exchange_form)}};
}

json model_json(const engine::ModelParams& model) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ModelAParams>) {
          return json{{"type", "A"},
                      {"epsilon", p.epsilon},
                      {"lambda_z", p.lambda_z},
                      {"bath", bath_json(p.bath)}};
        } else {
          return json{{"type", "B"},
                      {"epsilon1", p.epsilon1},
                      {"epsilon2", p.epsilon2},
                      {"lambda1_z", p.lambda1_z},
                      {"lambda2_z", p.lambda2_z},
                      {"lambda1_plus", complex_json(p.lambda1_plus)},
                      {"lambda2_plus", complex_json(p.lambda2_plus)},
                      {"bath", bath_json(p.bath)}};
        }
      },
      model);
}

json scheme_json(const engine::SchemeConfig& cfg) {
  return json{{"scheme", codes::scheme_name(cfg.layout.scheme)},
              {"total_time", cfg.total_time},
              {"zeno_count", cfg.zeno_count},
              {"inner_zeno_count", cfg.inner_zeno_count},
              {"mode", engine::mode_name(cfg.mode)},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"measurement_impl", engine::measurement_impl_name(cfg.measurement_impl)},
              {"stabilizer_order", engine::stabilizer_order_name(cfg.stabilizer_order)},
              {"qecc3_correct_every_k", cfg.qecc3_correct_every_k},
              {"inject_z_block", cfg.inject_z_block}};
}

json config_json(const RunConfigFile& cfg) {
  json doc;
  doc["model"] = model_json(cfg.model);
  doc["scheme"] = scheme_json(cfg.scheme);
  doc["logical"] =
      json{{"alpha", complex_json(cfg.logical.alpha)}, {"beta", complex_json(cfg.logical.beta)}};
  if (cfg.sweep.present) {
    json sw;
    sw["compare"] = cfg.sweep.compare;
    sw["variable"] = metrics::sweep_variable_name(cfg.sweep.variable);
    sw["values"] = cfg.sweep.values;
    json schemes = json::array();
    for (Scheme s : cfg.sweep.schemes) schemes.push_back(codes::scheme_name(s));
    sw["schemes"] = schemes;
    sw["fit"] = cfg.sweep.fit;
    doc["sweep"] = sw;
  }
  doc["output"] = json{{"path", cfg.output.path}, {"format", cfg.output.format}};
  return doc;
}

// Single-run config reproducing one table row: the row's materialized model
// and scheme, no sweep section.
std::string row_config(const RunConfigFile& base, const models::ModelBParams& model,
                       const engine::SchemeConfig& cfg) {
  RunConfigFile row = base;
  row.model = model;
  row.scheme = cfg;
  row.sweep = SweepSection{};
  row.output = OutputSection{};
  return config_json(row).dump();
}

}  // namespace

std::string serialize_config(const RunConfigFile& cfg) { return config_json(cfg).dump(2) + "\n"; }

std::uint64_t resolve_seed(const RunConfigFile& cfg, const std::uint64_t* flag_seed,
                           const char* env_value) {
  if (flag_seed != nullptr) return *flag_seed;
  if (cfg.seed_in_file) return cfg.scheme.seed;
  if (env_value != nullptr) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env_value, &end, 10);
    if (errno != 0 || end == env_value || *end != '\0')
      throw ConfigError("SIM_SEED: expected an unsigned integer, got '" +
                        std::string(env_value) + "'");
    return static_cast<std::uint64_t>(v);
  }
  return 0;
}

// ---- result records ----

namespace {

json result_json(const engine::RunResult& r) {
  return json{{"final_fidelity", r.final_fidelity},
              {"final_leak_weight", r.final_leak_weight},
              {"survival_probability", r.survival_probability},
              {"logical_phase_error", r.logical_phase_error},
              {"detect_flags", r.detect_flags},
              {"fidelity_std_error", r.fidelity_std_error},
              {"leak_std_error", r.leak_std_error},
              {"leak_weight_series", r.leak_weight_series},
              {"aborted", r.aborted},
              {"abort_reason", r.abort_reason}};
}

}  // namespace

std::string result_record_json(const RunConfigFile& resolved, const engine::RunResult& result,
                               bool include_timing) {
  json doc;
  doc["version"] = kVersion;
  doc["seed"] = resolved.scheme.seed;
  doc["config"] = config_json(resolved);
  doc["result"] = result_json(result);
  if (include_timing) {
    const double total = result.wall_record.empty() ? 0.0 : result.wall_record.back();
    doc["timing"] = json{{"wall_record", result.wall_record}, {"total_seconds", total}};
  }
  return doc.dump(2) + "\n";
}

std::string fit_record_json(const metrics::FitResult& fit, Scheme scheme,
                            const metrics::SweepSpec& spec, const RunConfigFile& resolved) {
  json points = json::array();
  for (const auto& [x, y] : fit.points) points.push_back(json::array({x, y}));
  json floored = json::array();
  for (const auto& [x, y] : fit.floored_points) floored.push_back(json::array({x, y}));
  json doc;
  doc["version"] = kVersion;
  doc["scheme"] = codes::scheme_name(scheme);
  doc["variable"] = metrics::sweep_variable_name(spec.variable);
  doc["exponent"] = fit.exponent;
  doc["intercept"] = fit.intercept;
  doc["r_squared"] = fit.r_squared;
  doc["points"] = points;
  doc["floored_points"] = floored;
  doc["config"] = config_json(resolved);
  return doc.dump(2) + "\n";
}

// ---- CSV ----

std::string csv_field(const std::string& raw) {
  const bool needs_quoting =
      raw.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quoting) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

namespace {

std::string num(double v) { return json(v).dump(); }

}  // namespace

std::string sweep_table_csv(const metrics::SweepSpec& spec,
                            const std::vector<metrics::SweepRow>& rows,
                            const RunConfigFile& resolved) {
  std::string out =
      "scheme,variable,value,final_fidelity,final_leak_weight,survival_probability,"
      "logical_phase_error,detect_flags,fidelity_std_error,leak_std_error,aborted,"
      "abort_reason,config\n";
  for (const auto& row : rows) {
    const auto [model, cfg] = metrics::sweep_point(spec, row.scheme, row.value);
    const engine::RunResult& r = row.result;
    out += csv_field(codes::scheme_name(row.scheme));
    out += ',';
    out += csv_field(metrics::sweep_variable_name(spec.variable));
    out += ',';
    out += num(row.value) + ',';
    out += num(r.final_fidelity) + ',';
    out += num(r.final_leak_weight) + ',';
    out += num(r.survival_probability) + ',';
    out += num(r.logical_phase_error) + ',';
    out += num(r.detect_flags) + ',';
    out += num(r.fidelity_std_error) + ',';
    out += num(r.leak_std_error) + ',';
    out += (r.aborted ? "true," : "false,");
    out += csv_field(r.abort_reason);
    out += ',';
    out += csv_field(row_config(resolved, model, cfg));
    out += '\n';
  }
  return out;
}

std::string compare_table_csv(const std::vector<metrics::CompareRow>& rows,
                              const RunConfigFile& resolved) {
  const models::ModelBParams* model = std::get_if<models::ModelBParams>(&resolved.model);
  std::string out =
      "rank,scheme,qubit_cost,final_fidelity,final_leak_weight,residual_phase_error,"
      "aborted,abort_reason,config\n";
  for (const auto& row : rows) {
    out += std::to_string(row.rank) + ',';
    out += csv_field(codes::scheme_name(row.scheme));
    out += ',';
    out += std::to_string(row.qubit_cost) + ',';
    out += num(row.final_fidelity) + ',';
    out += num(row.final_leak_weight) + ',';
    out += num(row.residual_phase_error) + ',';
    out += (row.aborted ? "true," : "false,");
    out += csv_field(row.abort_reason);
    out += ',';
    const engine::SchemeConfig cfg = metrics::adapt_for_scheme(resolved.scheme, row.scheme);
    out += csv_field(row_config(resolved, model ? *model : models::ModelBParams{}, cfg));
    out += '\n';
  }
  return out;
}

// ---- atomic writes ----

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp =
      target.parent_path() / (target.filename().string() + ".tmp." +
                              std::to_string(static_cast<unsigned>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write_atomic: write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("write_atomic: rename to '" + path + "' failed: " + ec.message());
  }
}

}  // namespace zenosim::config
