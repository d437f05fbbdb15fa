#pragma once

#include <cstdint>
#include <random>

namespace qevo {

/// Deterministic random stream. One instance per caller; never shared
/// across threads.
using RandomStream = std::mt19937_64;

inline double uniform_real(RandomStream& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform integer in [lo, hi], both bounds inclusive.
inline int uniform_int(RandomStream& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(RandomStream& rng, double p) {
  return uniform_real(rng, 0.0, 1.0) < p;
}

}  // namespace qevo
