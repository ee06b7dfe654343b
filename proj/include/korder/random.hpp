#pragma once

#include <cstdint>
#include <random>

namespace korder {

// All sampling uses std::mt19937_64 (a fixed, standardized stream) seeded
// through splitmix64, with our own bounded draw so results do not depend on
// the standard library's distribution implementations.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Independent stream derived from this seed and a tag.
  static Rng split(std::uint64_t seed, std::uint64_t tag) {
    return Rng(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace korder
