#pragma once

#include "fermat/arith.hpp"
#include "fermat/error.hpp"
#include "fermat/modp.hpp"
#include "fermat/poly.hpp"

namespace fermat {

/// Q as a coefficient field for the polynomial kernel.
struct RationalField {
  using value_type = Rational;

  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational inv(const Rational& a) const {
    if (a == 0) throw DivisionByZero("inverse of rational zero");
    return 1 / a;
  }
  bool is_zero(const Rational& a) const { return sgn(a) == 0; }
  bool equal(const Rational& a, const Rational& b) const { return a == b; }
  bool certify_coprime(const Polynomial<Rational>& a, const Polynomial<Rational>& b) const;
};

using QPoly = Polynomial<Rational>;
using QRatFunc = RatFunc<Rational>;

}  // namespace fermat
