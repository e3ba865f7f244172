#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

#include "curricula/error.hpp"

namespace curricula {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64 stream: state advances by the golden-ratio increment
/// 0x9E3779B97F4A7C15 and each output is mix64(state). All derived draws are
/// defined in terms of next() so that streams are reproducible bit-for-bit.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type next() {
    state_ += kIncrement;
    return mix64(state_);
  }
  constexpr result_type operator()() { return next(); }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] by modulo reduction (bias below 2^-50 for
  /// the small ranges used here).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw InputError("uniform_int: empty range");
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();
    return lo + next() % span;
  }

  /// Standard normal via the cosine branch of Box-Muller (two draws per call).
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Child seed for a labelled sub-stream: folds each path element into the
/// seed with mix64(h ^ mix64(x + increment)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed);
  for (auto x : path) h = mix64(h ^ mix64(x + SplitMix64::kIncrement));
  return h;
}

}  // namespace curricula
