#pragma once

#include <cstdint>

namespace nin {

// SplitMix64. Fixed public constants so that reimplementations in any language
// reproduce identical streams; this is the only randomness source in the
// project. bounded(n) is next() % n by definition (the tiny modulo bias is
// irrelevant here and keeping the recipe trivial matters more).
struct splitmix64 {
  std::uint64_t state;

  explicit splitmix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next(); }
};

}  // namespace nin
