#pragma once

#include <cmath>
#include <cstdint>

namespace simproj {

/// splitmix64: the state advances by the 64-bit golden-ratio constant and the
/// output is the avalanche-mixed state. Identical streams on every platform;
/// the exact recurrence is documented in the README.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  /// uniform on [lo, hi)
  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// uniform on [-1, 1)
  double uniform_sym() { return uniform_in(-1.0, 1.0); }

  /// standard normal via Box-Muller; log argument kept in (0, 1]
  double normal() {
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Derives a child seed from (seed, salt); chained calls give every
/// (kind, dimension, index) combination its own instance seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (salt + 0x9e3779b97f4a7c15ull));
  return g.next();
}

}  // namespace simproj
