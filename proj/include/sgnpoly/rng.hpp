#ifndef SGNPOLY_RNG_HPP_
#define SGNPOLY_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace sgnpoly {

// splitmix64 finalizer; the workhorse behind all counter-based draws.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a) {
  return mix64(seed ^ (mix64(a) + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b) {
  return hash_combine(hash_combine(seed, a), b);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c) {
  return hash_combine(hash_combine(seed, a, b), c);
}

// Uniform double in [0,1) from a 64-bit word (53 mantissa bits).
inline double to_unit_interval(std::uint64_t u) {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Bernoulli draw for unordered pair {i,j}: a pure function of
// (seed, min(i,j), max(i,j)). Keeps adjacency sampling order-independent.
inline double pair_uniform(std::uint64_t seed, int i, int j) {
  const std::uint64_t lo = static_cast<std::uint64_t>(i < j ? i : j);
  const std::uint64_t hi = static_cast<std::uint64_t>(i < j ? j : i);
  return to_unit_interval(hash_combine(seed, lo, hi));
}

// Sequential generator for parameter sampling. Wraps mt19937_64 but maps
// words to doubles itself so streams are stable across standard libraries.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(mix64(seed)) {}

  double uniform01() { return to_unit_interval(engine_()); }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Inverse-CDF Pareto(shape a, scale s): density a s^a / x^{a+1} on x >= s.
  double pareto(double shape, double scale) {
    double u = uniform01();
    return scale * std::pow(1.0 - u, -1.0 / shape);
  }

  double exponential() {
    double u = uniform01();
    return -std::log1p(-u);
  }

  std::uint64_t next_word() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sgnpoly

#endif  // SGNPOLY_RNG_HPP_
