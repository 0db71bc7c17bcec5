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

// verify.hpp — built-in property suite behind the `verify` subcommand.

#pragma once

#include <string>
#include <vector>

namespace zenosim::verify {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;     // one-line summary of what was checked / what failed
  double seconds = 0.0;
};

struct VerifyOptions {
  // Test harness hook: deliberately corrupt the named property's check so the
  // failure path (exit code, naming) can be exercised end to end.  Accepts
  // the printed property name with spaces or hyphens.
  std::string inject_fault;
};

// Property names, in execution order:
//   dfs-exactness, projector-completeness, ancilla-xor-equivalence,
//   code-roundtrips, propagator-unitarity, trace-preservation
std::vector<PropertyResult> run_all(const VerifyOptions& options = {});

}  // namespace zenosim::verify
