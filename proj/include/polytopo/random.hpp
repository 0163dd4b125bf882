#pragma once

#include <cstdint>

#include "polytopo/poly.hpp"

namespace polytopo {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// splitmix64 finaliser; used to derive independent streams from
/// (seed, stream, index) so results never depend on evaluation order.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(stream)) + index);
}

/// Deterministic generator of the random rationals used for generic
/// targets, parameters and linear forms. Bit-identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi]; rejection sampling avoids modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Numerator in [-10^4, 10^4], denominator in [1, 10^2].
  Rational generic_rational() {
    Rational q(static_cast<long>(uniform(-10000, 10000)),
               static_cast<unsigned long>(uniform(1, 100)));
    q.canonicalize();
    return q;
  }

 private:
  std::uint64_t state_;
};

}  // namespace polytopo
