#pragma once

#include <cstdint>
#include <random>

namespace wildfire {

// SplitMix64 finalizer. Used as a counter-based generator so per-cell draws do
// not depend on evaluation order.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Maps 64 random bits to [0, 1).
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform draw in [0,1) for (key, counter).
constexpr double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  return to_unit(hash_combine(key, counter));
}

/// Seedable pseudo-random source. Value type; copying forks the stream.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : engine_(mix64(seed)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t next() { return engine_(); }
  double uniform() { return to_unit(engine_()); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's nearly-divisionless rejection.
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Independent child stream; advances this stream by one draw.
  Rng split() { return Rng(engine_() ^ 0xa0761d6478bd642fULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wildfire
