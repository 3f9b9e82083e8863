#include <gtest/gtest.h>

#include <random>

#include "fermat/error.hpp"
#include "fermat/mpoly.hpp"
#include "fermat/rational_field.hpp"

namespace fermat {
namespace {

const MPoly X = MPoly::variable(2, 0);
const MPoly Y = MPoly::variable(2, 1);
MPoly C(long c) { return MPoly::constant(2, Rational(c)); }

MPoly random_bivariate(std::mt19937_64& rng, int dx, int dy) {
  MPoly p(2);
  for (int i = 0; i <= dx; ++i)
    for (int j = 0; j <= dy; ++j) {
      const long c = static_cast<long>(rng() % 7) - 3;
      p.add_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, Rational(c));
    }
  return p;
}

// p(c, Y) as a univariate polynomial over Q.
QPoly specialize(const MPoly& p, const Rational& c) {
  const auto cs = p.coeffs_in(1);
  std::vector<Rational> v;
  for (const auto& q : cs) {
    Rational s = 0;
    for (const auto& [m, k] : q.terms()) {
      Rational pw = 1;
      for (std::uint32_t e = 0; e < m[0]; ++e) pw *= c;
      s += k * pw;
    }
    v.push_back(s);
  }
  QPoly out(std::move(v));
  poly::trim(RationalField{}, out);
  return out;
}

TEST(MPoly, Arithmetic) {
  const MPoly a = X + Y, b = X - Y;
  EXPECT_EQ(a * b, X * X - Y * Y);
  EXPECT_EQ((a * a).total_degree(), 2);
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((X * X * Y).degree_in(0), 2);
  EXPECT_EQ((X * X * Y).degree_in(1), 1);
  EXPECT_EQ(C(3).constant_value(), Rational(3));
  EXPECT_EQ((X * Y + C(1)).substitute(1, X), X * X + C(1));
}

TEST(MPoly, ToString) {
  const std::vector<std::string> names = {"x", "y"};
  EXPECT_EQ((X * X - Y.scaled(Rational(1, 2)) + C(3)).to_string(names), "x^2 - 1/2*y + 3");
  EXPECT_EQ(MPoly(2).to_string(names), "0");
  EXPECT_EQ((-X * Y).to_string(names), "-x*y");
}

TEST(MPoly, ExactDivision) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const MPoly a = random_bivariate(rng, 2, 2), b = random_bivariate(rng, 2, 1);
    if (b.is_zero()) continue;
    EXPECT_EQ(exact_div(a * b, b), a);
  }
  MPoly q;
  EXPECT_FALSE(try_exact_div(X * X + C(1), X + C(1), q));
  EXPECT_THROW(exact_div(X, Y), InvariantViolation);
}

TEST(MPoly, CoefficientRoundTrip) {
  std::mt19937_64 rng(5);
  const MPoly p = random_bivariate(rng, 3, 4);
  EXPECT_EQ(MPoly::from_coeffs_in(1, p.coeffs_in(1)), p);
  EXPECT_EQ(MPoly::from_coeffs_in(0, p.coeffs_in(0)), p);
}

TEST(MPoly, ResultantExamples) {
  // Res_Y(Y^2 - X, Y - 2) = 4 - X
  EXPECT_EQ(resultant(Y * Y - X, Y - C(2), 1), C(4) - X);
  // Res_Y(Y - X, Y^2 - 1) = X^2 - 1
  EXPECT_EQ(resultant(Y - X, Y * Y - C(1), 1), X * X - C(1));
  // A common factor gives zero.
  EXPECT_TRUE(resultant((Y - X) * (Y + C(1)), (Y - X) * (Y * Y + X), 1).is_zero());
  EXPECT_THROW(resultant(X, Y, 1), PreconditionError);
}

TEST(MPoly, ResultantSpecializesToUnivariate) {
  std::mt19937_64 rng(7);
  const RationalField q;
  for (int i = 0; i < 15; ++i) {
    const MPoly a = random_bivariate(rng, 2, 3), b = random_bivariate(rng, 2, 2);
    if (a.degree_in(1) < 1 || b.degree_in(1) < 1) continue;
    const MPoly r = resultant(a, b, 1);
    for (long c : {-2L, 1L, 3L}) {
      const QPoly ua = specialize(a, c), ub = specialize(b, c);
      if (ua.degree() != a.degree_in(1) || ub.degree() != b.degree_in(1)) continue;
      EXPECT_EQ(specialize(r, c).coeffs.empty() ? Rational(0) : specialize(r, c).coeffs[0],
                poly::resultant(q, ua, ub));
    }
  }
}

// Res_V(prod (V - r_i), prod (V - s_j)) = prod (r_i - s_j), with roots that
// are polynomials in U, W and rational coefficients.
TEST(MPoly, ResultantProductFormula) {
  const std::size_t nv = 3;
  const MPoly U = MPoly::variable(nv, 0), W = MPoly::variable(nv, 1), V = MPoly::variable(nv, 2);
  auto k = [&](long n, long d) { return MPoly::constant(nv, Rational(n, d)); };
  const std::vector<MPoly> r = {U * W + k(1, 2), U * U - k(3, 1), W.pow(3) + U};
  const std::vector<MPoly> s = {k(2, 3) * W - U, U * W * W + k(5, 7)};
  MPoly a = k(1, 1), b = k(1, 1), expected = k(1, 1);
  for (const auto& x : r) a = a * (V - x);
  for (const auto& y : s) b = b * (V - y);
  for (const auto& x : r)
    for (const auto& y : s) expected = expected * (x - y);
  EXPECT_EQ(resultant(a, b, 2), expected);
  EXPECT_EQ(probable_resultant(a, b, 2), expected);
  // scaling: res(c a, b) = c^deg b res(a, b)
  EXPECT_EQ(resultant(a.scaled(Rational(3, 5)), b, 2), expected.scaled(Rational(9, 25)));
}

TEST(MPoly, ProbableResultantAgrees) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    const MPoly a = random_bivariate(rng, 4, 3), b = random_bivariate(rng, 3, 4);
    if (a.degree_in(1) < 1 || b.degree_in(1) < 1) continue;
    EXPECT_EQ(probable_resultant(a, b, 1), resultant(a, b, 1));
    EXPECT_EQ(probable_resultant(a, b, 0), resultant(a, b, 0));
  }
}

TEST(MFrac, Arithmetic) {
  const MFrac x = MFrac::from(X), y = MFrac::from(Y);
  const MFrac a = x * y.inverse();
  EXPECT_TRUE((a * a.inverse()).same_as(MFrac::from(C(1))));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((x.inverse() + y.inverse()).same_as((x + y) * (x * y).inverse()));
  EXPECT_THROW(MFrac::from(MPoly(2)).inverse(), DivisionByZero);
}

}  // namespace
}  // namespace fermat
