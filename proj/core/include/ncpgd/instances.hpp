#pragma once

#include <cstdint>
#include <random>

#include "ncpgd/point.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

/// Seeded generator of random points and feasible points for property
/// trials. Streams are reproducible for a given seed (mt19937_64).
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::mt19937_64& engine() noexcept { return rng_; }

  double gaussian() { return gauss_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// Standard normal coordinates times `scale`.
  Point ambient(const Shape& shape, double scale = 1.0);

  /// A point of the given stratum of one of the shipped sets (support size
  /// or rank for the sparse and matrix sets; 0 origin, 1 boundary, 2
  /// interior for the planar sets). stratum < 0 picks one uniformly.
  Point feasible(const FeasibleSet& set, int stratum = -1);

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_;
};

}  // namespace ncpgd
