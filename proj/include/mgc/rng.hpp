// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace mgc {

/// Seeded generator used for every random choice in the project. The engine
/// is std::mt19937_64 (bit-exact per the standard); the draws below avoid
/// std distributions, whose output is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// Uniform float in [0, 1).
  float uniform_float() {
    return static_cast<float>(engine_() >> 40) * (1.0f / 16777216.0f);
  }

  /// Uniform float in [lo, hi).
  float uniform_float(float lo, float hi) { return lo + (hi - lo) * uniform_float(); }

  /// Independent substream keyed on this generator's seed, not its state.
  Rng fork(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

} // namespace mgc
