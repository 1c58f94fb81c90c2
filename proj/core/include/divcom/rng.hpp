#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace divcom {

/// One splitmix64 scrambling step.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive the seed of an independent substream. Every parallel or per-replicate
/// random source takes its seed from here so results never depend on scheduling.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

/// Seeded random source. All variates are produced by fixed arithmetic on the
/// mt19937_64 word stream (std::*_distribution is implementation-defined and
/// would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  std::uint64_t u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  /// Uniform integer in [0, m), m >= 1 (multiply-shift reduction).
  std::uint64_t below(std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(u64()) * m) >> 64);
  }

  /// Index drawn from the distribution with cumulative weights `cum`
  /// (nondecreasing, cum.back() = total mass > 0).
  int categorical(const std::vector<double>& cum) {
    double u = unit() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<int>(it - cum.begin());
  }

  /// Number of failures before the first success at success probability p.
  std::int64_t geometric(double p) {
    if (p >= 1.0) return 0;
    return static_cast<std::int64_t>(
        std::floor(std::log1p(-unit()) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace divcom
