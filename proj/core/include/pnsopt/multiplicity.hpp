#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "pnsopt/rng.hpp"

namespace pnsopt {

/**
 * Holding time of a jump-chain state: 1 + Geometric(p), where p is the
 * per-step escape probability. Support {1, 2, ...}, mean 1/p. Sampled by
 * exact inversion from a single uniform draw, so the law is reproduced
 * identically on every platform. Throws std::domain_error unless 0 < p <= 1.
 */
inline std::uint64_t sample_multiplicity(double p, RngStream& rng) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::domain_error("sample_multiplicity: escape probability must be in (0, 1]");
  }
  const double u = rng.uniform01_open();
  if (p == 1.0) return 1;
  const double failures = std::floor(std::log(u) / std::log1p(-p));
  constexpr double cap = 9.0e18;  // keep the cast to uint64 defined
  return 1 + static_cast<std::uint64_t>(failures < cap ? failures : cap);
}

}  // namespace pnsopt
