#pragma once

#include <cstdint>
#include <random>

namespace pnsopt {

/** Stateless 64-bit mixer; good avalanche, used for seed derivation. */
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/**
 * Derives a child seed from (base, index). Children for distinct indices are
 * independent streams, and adding more indices never perturbs earlier ones.
 */
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) + 0x9E3779B97F4A7C15ull * (index + 1));
}

/**
 * Seeded random stream addressed by (seed, stream_id). Identical pairs yield
 * identical draw sequences; distinct stream ids are statistically independent.
 */
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(mix_seed(seed, stream_id)), seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /** Uniform double in [0, 1). */
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /** Uniform double in (0, 1]; safe as a log() argument. */
  double uniform01_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /** Uniform index in [0, n); unbiased via rejection. */
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t draw = next_u64();
    while (draw >= limit) draw = next_u64();
    return static_cast<std::size_t>(draw % span);
  }

  double normal(double mean, double stddev) {
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
  }

  std::uint64_t poisson(double mean) {
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

/**
 * The three purpose-split streams one run consumes. Keeping proposals, subset
 * draws, and selection/acceptance draws on separate streams makes degenerate
 * configurations (full-neighborhood subsets, zero-length tabu windows) replay
 * the exact draw sequence of the algorithm they collapse into.
 */
struct RngBundle {
  RngStream proposal;
  RngStream select;
  RngStream subset;

  explicit RngBundle(std::uint64_t seed)
      : proposal(seed, 1), select(seed, 2), subset(seed, 3) {}
};

}  // namespace pnsopt
