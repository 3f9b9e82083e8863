#include "fermat/sampling.hpp"

#include "fermat/error.hpp"

namespace fermat {

long ElementSampler::uniform(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng_() % span);
}

TowerElem ElementSampler::monomial(std::size_t max_level) {
  TowerElem m = tower_.one();
  for (std::size_t i = 0; i < max_level; ++i) {
    const long a = uniform(0, 3) == 0 ? 2 : uniform(0, 1);
    const long b = uniform(0, 3) == 0 ? 2 : uniform(0, 1);
    if (a) m = tower_.mul(m, tower_.pow(tower_.gen_x(i), a));
    if (b) m = tower_.mul(m, tower_.pow(tower_.gen_y(i), b));
  }
  return m;
}

TowerElem ElementSampler::numerator(std::size_t max_level) {
  TowerElem sum = tower_.zero();
  const long terms = uniform(1, 3);
  for (long t = 0; t < terms; ++t) {
    long n = uniform(-5, 4);
    if (n >= 0) ++n;
    const Rational c = make_rational(n, uniform(1, 3));
    sum = tower_.add(sum, tower_.mul(tower_.rational(c), monomial(max_level)));
  }
  return sum;
}

TowerElem ElementSampler::element(std::size_t max_level) {
  TowerElem sum = numerator(max_level);
  if (max_level > 0 && uniform(0, 2) == 0) {
    // Deeper denominators make level-2 inverses very expensive, so only the
    // top x generator (or y_0 in a one-level draw) is shifted.
    const std::size_t i = max_level - 1;
    const TowerElem g = (i == 0 && uniform(0, 1)) ? tower_.gen_y(0) : tower_.gen_x(i);
    long c = uniform(-3, 2);
    if (c >= 0) ++c;
    sum = tower_.div(sum, tower_.add(g, tower_.integer(c)));
  }
  return sum;
}

TowerElem ElementSampler::element(std::size_t max_level, std::size_t denominator_level) {
  if (denominator_level >= max_level) {
    throw PreconditionError("denominator level must lie below the element level");
  }
  TowerElem sum = numerator(max_level);
  if (uniform(0, 2) == 0) {
    const std::size_t i = denominator_level;
    const TowerElem g = uniform(0, 1) ? tower_.gen_y(i) : tower_.gen_x(i);
    long c = uniform(-3, 2);
    if (c >= 0) ++c;
    sum = tower_.div(sum, tower_.add(g, tower_.integer(c)));
  }
  return sum;
}

TowerElem ElementSampler::element_over_x(std::size_t max_level) {
  TowerElem sum = numerator(max_level);
  if (max_level > 0 && uniform(0, 2) == 0) {
    long c = uniform(-3, 2);
    if (c >= 0) ++c;
    sum = tower_.div(sum, tower_.add(tower_.gen_x(max_level - 1), tower_.integer(c)));
  }
  return sum;
}

TowerElem ElementSampler::nonzero_element(std::size_t max_level) {
  while (true) {
    TowerElem e = element(max_level);
    if (!e.is_zero()) return e;
  }
}

}  // namespace fermat
