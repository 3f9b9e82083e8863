#pragma once

#include <cstdint>
#include <random>

#include "fermat/tower.hpp"

namespace fermat {

/// Seeded source of small random tower elements. Uses only the raw output of
/// mt19937_64 so sequences are identical across standard libraries.
class ElementSampler {
 public:
  ElementSampler(const Tower& tower, std::uint64_t seed) : tower_(tower), rng_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);

  /// A random element whose canonical form lives at level <= max_level: a
  /// short sum of rational multiples of generator monomials, sometimes
  /// divided by x_{max_level-1} + c (or y_0 + c when max_level is 1).
  TowerElem element(std::size_t max_level);

  /// Like element(), but a denominator is always a shift of x or y at
  /// `denominator_level` (which must be below max_level).
  TowerElem element(std::size_t max_level, std::size_t denominator_level);

  /// A numerator as in element(), divided one time in three by x_{max_level-1} + c.
  /// Elements with y in a denominator have large pole divisors, which makes
  /// their annihilators over other generators expensive.
  TowerElem element_over_x(std::size_t max_level);

  /// Same as element() but never zero.
  TowerElem nonzero_element(std::size_t max_level);

  std::mt19937_64& engine() { return rng_; }

 private:
  TowerElem monomial(std::size_t max_level);
  TowerElem numerator(std::size_t max_level);

  const Tower& tower_;
  std::mt19937_64 rng_;
};

}  // namespace fermat
