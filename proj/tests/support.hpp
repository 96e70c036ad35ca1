#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gapcert/groundstate.hpp"

namespace gapcert::testing {

/// Profile shared by every test in a binary; computed once with the CLI
/// defaults.
inline const GroundStateProfile& profile() {
  static const GroundStateProfile p = compute_ground_state(1e-11);
  return p;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace gapcert::testing
