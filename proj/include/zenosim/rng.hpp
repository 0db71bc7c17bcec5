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

// rng.hpp — Reproducible randomness.
//
// One master seed per run; per-sample streams are derived by a counter-based
// split (sample index mixed into the seed), so Monte Carlo results are
// bit-identical regardless of execution order or parallelism.  Uniform
// doubles are generated by an explicit bit recipe rather than
// std::uniform_real_distribution, whose output is implementation-defined.

#pragma once

#include <cstdint>
#include <random>

namespace zenosim::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derived seed for stream `index` under `master`; stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t mixed_master = splitmix64(s);
  s = mixed_master ^ ((index + 1) * 0x9E3779B97F4A7C15ull);
  return splitmix64(s);
}

inline std::mt19937_64 stream(std::uint64_t master, std::uint64_t index) {
  return std::mt19937_64(derive_seed(master, index));
}

// Uniform double in [0, 1) with 53 significant bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace zenosim::rng
