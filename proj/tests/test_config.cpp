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

#include "zenosim/config.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace zenosim;
using namespace zenosim::config;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("zenosim_test_" + std::to_string(getpid()) + "_" + tag);
  fs::create_directories(dir);
  return dir;
}

struct CliOutcome {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

// Run the built CLI with the given arguments, capturing exit code and output.
CliOutcome run_cli(const std::string& args, const std::string& tag) {
  const fs::path log = scratch_dir("logs") / (tag + ".log");
  const std::string cmd =
      std::string(ZENOSIM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliOutcome out;
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  out.output = slurp(log);
  return out;
}

}  // namespace

TEST_CASE("an empty document parses to the documented defaults") {
  const RunConfigFile cfg = parse_config("{}");
  const auto* b = std::get_if<models::ModelBParams>(&cfg.model);
  REQUIRE(b != nullptr);
  CHECK(b->epsilon1 == 1.0);
  CHECK(b->lambda1_z == 0.2);
  CHECK(b->lambda1_plus == Complex(0.02, 0.0));
  CHECK(b->bath.levels == 4);
  CHECK(b->bath.omega == 2.0);
  CHECK(cfg.scheme.layout.scheme == codes::Scheme::DFS_ZENO);
  CHECK(cfg.scheme.total_time == 20.0);
  CHECK(cfg.scheme.zeno_count == 1);
  CHECK(cfg.logical.alpha == Complex(1, 0));
  CHECK_FALSE(cfg.sweep.present);
  CHECK_FALSE(cfg.seed_in_file);
  CHECK(cfg.output.path.empty());
}

TEST_CASE("unknown keys are rejected with the full field path") {
  const auto has = [](const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
  };
  try {
    parse_config(R"({"model": {"type": "B", "bath": {"levles": 3}}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has(e.what(), "model.bath.levles"));
    CHECK(has(e.what(), "unknown key"));
  }
  try {
    parse_config(R"({"scheme": {"zeno_cuont": 4}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has(e.what(), "scheme.zeno_cuont"));
  }
  CHECK_THROWS_AS(parse_config(R"({"extra": 1})"), ConfigError);
}

TEST_CASE("type errors name the offending field") {
  try {
    parse_config(R"({"scheme": {"zeno_count": "four"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("scheme.zeno_count") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"model": {"type": "C"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scheme": {"seed": -3}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"logical": {"alpha": [1, 0], "beta": [1, 0]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("complex fields accept bare numbers and [re, im] pairs") {
  const RunConfigFile scalar =
      parse_config(R"({"model": {"type": "B", "lambda1_plus": 0.05}})");
  CHECK(std::get<models::ModelBParams>(scalar.model).lambda1_plus == Complex(0.05, 0.0));
  const RunConfigFile pair =
      parse_config(R"({"model": {"type": "B", "lambda1_plus": [0.01, -0.02]}})");
  CHECK(std::get<models::ModelBParams>(pair.model).lambda1_plus == Complex(0.01, -0.02));
  CHECK_THROWS_AS(parse_config(R"({"model": {"type": "B", "lambda1_plus": [1, 2, 3]}})"),
                  ConfigError);
}

TEST_CASE("model type A carries its own parameter set") {
  const RunConfigFile cfg = parse_config(
      R"({"model": {"type": "A", "epsilon": 1.5, "lambda_z": 0.3, "bath": {"omega": 1.0}}})");
  const auto* a = std::get_if<models::ModelAParams>(&cfg.model);
  REQUIRE(a != nullptr);
  CHECK(a->epsilon == 1.5);
  CHECK(a->lambda_z == 0.3);
  CHECK(a->bath.omega == 1.0);
  // Model-A documents reject model-B field names.
  CHECK_THROWS_AS(parse_config(R"({"model": {"type": "A", "epsilon1": 1.0}})"), ConfigError);
}

TEST_CASE("serialization round-trips bit-exactly") {
  const char* documents[] = {
      "{}",
      R"({"model": {"type": "A", "epsilon": 0.9},
          "scheme": {"scheme": "DFS", "total_time": 3.5},
          "logical": {"alpha": [0.6, 0], "beta": [0, 0.8]}})",
      R"({"model": {"type": "B", "lambda2_z": 0.22,
                    "bath": {"levels": 2, "initial_state": "coherent",
                             "coherent_alpha": [0.3, 0.1]}},
          "scheme": {"scheme": "DFS_ZENO_X_DETECT2_ZENO", "zeno_count": 8, "seed": 7,
                     "measurement_impl": "ancilla_xor", "stabilizer_order": "outer_first"},
          "sweep": {"variable": "delta_lambda_z", "values": [0, 0.01, 0.02],
                    "schemes": ["DFS", "DFS_ZENO"], "fit": true},
          "output": {"path": "t.csv", "format": "csv"}})",
  };
  for (const char* doc : documents) {
    const std::string once = serialize_config(parse_config(doc));
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("the detection scheme defaults its stabilizer cadence to every step") {
  const RunConfigFile on = parse_config(
      R"({"scheme": {"scheme": "DFS_ZENO_X_DETECT2_ZENO", "zeno_count": 12}})");
  CHECK(on.scheme.inner_zeno_count == 12);
  const RunConfigFile off = parse_config(
      R"({"scheme": {"scheme": "DFS_ZENO_X_DETECT2_ZENO", "zeno_count": 12,
                     "inner_zeno_count": 0}})");
  CHECK(off.scheme.inner_zeno_count == 0);
  const RunConfigFile coarse = parse_config(
      R"({"scheme": {"scheme": "DFS_ZENO_X_DETECT2_ZENO", "zeno_count": 12,
                     "inner_zeno_count": 4}})");
  CHECK(coarse.scheme.inner_zeno_count == 4);
  // Other schemes leave the cadence disabled unless explicitly set.
  CHECK(parse_config(R"({"scheme": {"zeno_count": 12}})").scheme.inner_zeno_count == 0);
}

TEST_CASE("seed resolution prefers flag, then file, then environment") {
  RunConfigFile with_file = parse_config(R"({"scheme": {"seed": 5}})");
  RunConfigFile without = parse_config("{}");
  const std::uint64_t flag = 9;
  CHECK(resolve_seed(with_file, &flag, "7") == 9);
  CHECK(resolve_seed(with_file, nullptr, "7") == 5);
  CHECK(resolve_seed(without, nullptr, "7") == 7);
  CHECK(resolve_seed(without, nullptr, nullptr) == 0);
  CHECK(resolve_seed(without, nullptr, "18446744073709551615") == 18446744073709551615ull);
  CHECK_THROWS_AS(resolve_seed(without, nullptr, "12x"), ConfigError);
  CHECK_THROWS_AS(resolve_seed(without, nullptr, ""), ConfigError);
  CHECK_THROWS_AS(resolve_seed(without, nullptr, "99999999999999999999999"), ConfigError);
}

TEST_CASE("csv_field quotes per RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("3.14") == "3.14");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_field("") == "");
}

TEST_CASE("write_atomic creates parents and leaves no temp files behind") {
  const fs::path dir = scratch_dir("atomic");
  const fs::path target = dir / "nested" / "out.txt";
  write_atomic(target.string(), "payload\n");
  CHECK(slurp(target) == "payload\n");
  write_atomic(target.string(), "replaced\n");  // overwrite in place
  CHECK(slurp(target) == "replaced\n");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(target.parent_path())) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("result records embed a config that reproduces the run") {
  const RunConfigFile cfg = parse_config(R"({"scheme": {"zeno_count": 2, "seed": 3}})");
  engine::RunResult result;
  result.final_fidelity = 0.5;
  result.leak_weight_series = {0.1, 0.2};
  const std::string with_t = result_record_json(cfg, result, true);
  const std::string without_t = result_record_json(cfg, result, false);
  const nlohmann::json jt = nlohmann::json::parse(with_t);
  CHECK(jt.contains("timing"));
  CHECK(jt.at("result").at("final_fidelity") == 0.5);
  CHECK(jt.at("seed") == 3);
  nlohmann::json stripped = jt;
  stripped.erase("timing");
  CHECK(stripped == nlohmann::json::parse(without_t));
  // The embedded config is itself parseable and equivalent.
  const RunConfigFile re = parse_config(jt.at("config").dump());
  CHECK(serialize_config(re) == serialize_config(cfg));
}

// ---- end-to-end CLI contract ----

TEST_CASE("cli: run on the bundled ideal-model config produces a fidelity-1 record") {
  const fs::path dir = scratch_dir("run_a");
  const CliOutcome r = run_cli("run --config " + std::string(ZENOSIM_CONFIG_DIR) +
                                   "/model_a_dfs.json --out " + dir.string(),
                               "run_a");
  CHECK(r.exit_code == 0);
  const nlohmann::json record = nlohmann::json::parse(slurp(dir / "model_a_dfs.json"));
  CHECK(record.at("result").at("final_fidelity").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(record.at("result").at("final_leak_weight").get<double>() <= 1e-12);
  CHECK_FALSE(record.at("result").at("aborted").get<bool>());
}

TEST_CASE("cli: two runs differ only in the timing field") {
  const fs::path da = scratch_dir("det_a"), db = scratch_dir("det_b");
  const std::string base = "run --config " + std::string(ZENOSIM_CONFIG_DIR) +
                           "/model_a_dfs.json --out ";
  CHECK(run_cli(base + da.string(), "det_a").exit_code == 0);
  CHECK(run_cli(base + db.string(), "det_b").exit_code == 0);
  nlohmann::json ja = nlohmann::json::parse(slurp(da / "model_a_dfs.json"));
  nlohmann::json jb = nlohmann::json::parse(slurp(db / "model_a_dfs.json"));
  CHECK(ja.contains("timing"));
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja.dump() == jb.dump());  // everything but wall-clock data is byte-identical
}

TEST_CASE("cli: configuration errors exit with code 2 and name the field") {
  const fs::path dir = scratch_dir("bad");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"scheme": {"zeno_count": 0}})";
  const CliOutcome r = run_cli("run --config " + bad.string(), "bad_n");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("zeno_count") != std::string::npos);

  const CliOutcome missing = run_cli("run --config " + (dir / "absent.json").string(), "absent");
  CHECK(missing.exit_code == 2);

  const fs::path empty_sweep = dir / "empty_sweep.json";
  std::ofstream(empty_sweep) << R"({"sweep": {"variable": "N", "values": []}})";
  const CliOutcome sw =
      run_cli("sweep --config " + empty_sweep.string() + " --out " + dir.string(), "empty_sweep");
  CHECK(sw.exit_code == 2);
  CHECK(sw.output.find("values") != std::string::npos);
}

TEST_CASE("cli: verify passes clean and fails under fault injection") {
  const CliOutcome ok = run_cli("verify", "verify_ok");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("[FAIL]") == std::string::npos);

  const CliOutcome bad = run_cli("verify --inject-fault projector-completeness", "verify_bad");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("projector-completeness") != std::string::npos);
  CHECK(bad.output.find("[FAIL]") != std::string::npos);
}
