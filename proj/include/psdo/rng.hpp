#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace psdo {

/// Seeded generator used by every randomized check. `split` derives an
/// independent stream from a label so each check is replayable on its own.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  Rng split(std::string_view label) const { return Rng(mix(seed_ ^ fnv1a(label))); }
  Rng split(std::uint64_t index) const { return Rng(mix(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1))); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }
  std::uint64_t index(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  /// Standard complex Gaussian entries (independent N(0, 1/2) parts).
  std::vector<std::complex<double>> complex_normal(std::size_t count) {
    std::vector<std::complex<double>> out(count);
    const double s = 1.0 / std::sqrt(2.0);
    for (auto& z : out) {
      const double re = normal();
      const double im = normal();
      z = {s * re, s * im};
    }
    return out;
  }

  std::uint64_t seed() const noexcept { return seed_; }

  static std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return h;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace psdo
