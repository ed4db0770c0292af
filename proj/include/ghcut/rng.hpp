#pragma once

#include <cstdint>

namespace ghcut {

// Deterministic splittable PRNG (splitmix64 core). Child streams are derived
// from the stream's root seed and a tag, never from consumption state, so
// branch order does not affect sibling streams.
class split_rng {
 public:
  explicit split_rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  split_rng split(std::uint64_t tag) const {
    std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ull + tag * 0xda942042e4dd58b5ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return split_rng(z ^ (z >> 31));
  }

  // Uniform in [0, bound), unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound) - 1;
    std::uint64_t v = next();
    while (v > limit) v = next();
    return v % bound;
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return unit() < p;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace ghcut
