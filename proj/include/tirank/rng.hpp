#pragma once

#include <cmath>
#include <cstdint>

#include "tirank/errors.hpp"

namespace tirank {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
// Chosen over std::mt19937 because its output sequence is pinned by these
// few lines of fixed-width arithmetic, so seeded corpora are reproducible
// byte-for-byte on any platform and in any reimplementation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], both ends inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) fail(errc::domain, "uniform_int with lo > hi");
    const double span = static_cast<double>(hi - lo) + 1.0;
    std::int64_t v = lo + static_cast<std::int64_t>(unit() * span);
    return v > hi ? hi : v;
  }

  bool bernoulli(double p) { return unit() < p; }

  double exponential(double mean) {
    if (mean <= 0) fail(errc::domain, "exponential needs a positive mean");
    return -mean * std::log1p(-unit());
  }

  // Geometric on {1, 2, ...} with the given mean (success probability 1/mean).
  std::int64_t shifted_geometric(double mean) {
    if (mean < 1) fail(errc::domain, "shifted geometric needs mean >= 1");
    if (mean == 1) return 1;
    const double p = 1.0 / mean;
    const double u = unit();
    return 1 + static_cast<std::int64_t>(std::log1p(-u) / std::log1p(-p));
  }

  // Knuth's product method; adequate for the small means used here.
  std::int64_t poisson(double mean) {
    if (mean < 0) fail(errc::domain, "poisson needs a non-negative mean");
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= unit();
    } while (product > limit);
    return k - 1;
  }

  // Independent child stream; used to give each generated field its own
  // deterministic sub-seed.
  SplitMix64 fork() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace tirank
