/*******************************************************************************
 * Deterministic random source.
 *
 * All randomness flows from a single 64-bit seed through std::mt19937_64,
 * whose output sequence is fixed by the standard. The conversions below are
 * written out by hand because the std distributions are
 * implementation-defined.
 *
 * @file:   rng.hpp
 ******************************************************************************/
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace geosssp {

inline constexpr const char *kRngName = "mt19937_64";
inline constexpr int kRngVersion = 1;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : _engine(seed) {}

  std::uint64_t next_u64() { return _engine(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(_engine() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) {
      return 0;
    }
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = _engine();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal() {
    const double u1 = uniform_open_closed();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Derives an independent stream; used to give sub-steps their own seeds.
  std::uint64_t fork() { return _engine() ^ 0x9E3779B97F4A7C15ULL; }

private:
  std::mt19937_64 _engine;
};

/// Mixes a seed with a salt (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace geosssp
