#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace niqsim {

// splitmix64: 64-bit state, equidistributed output, safe to seed with
// anything (including 0). Used instead of std::mt19937 so that the same
// (seed, index) pair yields the same draw on every platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. The log argument stays in (0, 1].
  double gaussian() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
};

/// Independent stream for shot `index` of a run seeded with `seed`.
/// Derived from (seed, index) alone, so shots may be evaluated in any
/// order (or in parallel) without changing the result.
inline SplitMix64 shot_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 h(index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  return SplitMix64(seed ^ h.next());
}

/// Haar-distributed 2x2 unitary (up to an irrelevant global phase).
/// Used by the stochastic invariance checks.
inline Eigen::Matrix2cd random_unitary_2x2(SplitMix64& g) {
  const double t = std::asin(std::sqrt(g.uniform01()));
  const double a = 2.0 * std::numbers::pi * g.uniform01();
  const double b = 2.0 * std::numbers::pi * g.uniform01();
  const std::complex<double> ea(std::cos(a), std::sin(a));
  const std::complex<double> eb(std::cos(b), std::sin(b));
  Eigen::Matrix2cd u;
  u << ea * std::cos(t), eb * std::sin(t),
      -std::conj(eb) * std::sin(t), std::conj(ea) * std::cos(t);
  return u;
}

}  // namespace niqsim
