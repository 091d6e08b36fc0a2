#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "certhull/geom.hpp"

namespace certhull {

/// SplitMix64. Each step adds 0x9E3779B97F4A7C15 to the state and mixes with
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// Bounded draws reject r < (2^64 mod bound), then return `r % bound`,
/// so streams are reproducible in any language with 64-bit unsigned arithmetic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates from the back: for i = n-1 down to 1, swap a[i] with a[below(i+1)].
template <class T>
void shuffle(std::span<T> a, SplitMix64& rng) {
  for (std::size_t i = a.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(a[i - 1], a[j]);
  }
}

inline std::vector<Index> identity_permutation(std::size_t n) {
  std::vector<Index> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Index>(i);
  return p;
}

}  // namespace certhull
