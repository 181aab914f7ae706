// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scpls {

// Deterministic 64-bit random source. All derived draws are documented
// transforms of raw mt19937_64 output, so a seed pins the whole stream:
//   uniform01: ((x >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
//   gaussian:  Box-Muller pair from two uniform01 draws, second value cached
//   below(m):  rejection sampling on the top multiple of m
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;  // 53 significant bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace scpls
