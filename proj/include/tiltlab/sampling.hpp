#pragma once

// Seeded generators for the property suites. Draws go through mt19937_64
// with a fixed rejection scheme, so a seed gives the same sample on every
// platform.

#include <cstdint>
#include <random>

#include "tiltlab/abgrp.hpp"
#include "tiltlab/heart.hpp"
#include "tiltlab/torsion.hpp"

namespace tiltlab {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  long uniform(long lo, long hi);

  // Rank <= max_rank, at most max_factors invariant factors, each <= max_factor.
  FgAbGroup group(std::size_t max_rank = 2, long max_factor = 100, std::size_t max_factors = 3);
  HeartObject heart_object(const PrimeSet& q, std::size_t max_rank = 2);
  HeartMorphism heart_morphism(const HeartObject& x, const HeartObject& y, long spread = 6);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tiltlab
