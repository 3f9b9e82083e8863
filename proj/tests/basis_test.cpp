#include <gtest/gtest.h>

#include "fermat/basis.hpp"
#include "fermat/census.hpp"
#include "fermat/error.hpp"
#include "fermat/presentation.hpp"
#include "fermat/sampling.hpp"

using namespace fermat;

namespace {

// Evaluates sum_k c_k(gens) t^k with plain tower arithmetic.
TowerElem evaluate_witness(const Tower& t, const AnnihilatorWitness& w, const TowerElem& x) {
  const std::function<TowerElem(const Rational&)> c = [&](const Rational& q) { return t.rational(q); };
  const std::function<TowerElem(const TowerElem&, const TowerElem&)> add =
      [&](const TowerElem& a, const TowerElem& b) { return t.add(a, b); };
  const std::function<TowerElem(const TowerElem&, const TowerElem&)> mul =
      [&](const TowerElem& a, const TowerElem& b) { return t.mul(a, b); };
  TowerElem sum = t.zero();
  TowerElem pw = t.one();
  for (const auto& f : w.coeffs) {
    const TowerElem v = t.div(evaluate_mpoly(f.num, w.gens, c, add, mul),
                              evaluate_mpoly(f.den, w.gens, c, add, mul));
    sum = t.add(sum, t.mul(v, pw));
    pw = t.mul(pw, x);
  }
  return sum;
}

MFrac poly1(std::initializer_list<std::pair<std::uint32_t, long>> terms) {
  MPoly p(1);
  for (auto [e, c] : terms) p.add_term(Monomial{e}, Rational(c));
  return MFrac::from(p);
}

}  // namespace

TEST(Annihilator, Y0OverX0IsTheFermatRelation) {
  Tower t({{5}});
  auto w = annihilator(t, t.gen_y(0), {t.gen_x(0)});
  ASSERT_TRUE(w);
  ASSERT_EQ(w->degree(), 5u);
  EXPECT_TRUE(w->coeffs[5].same_as(poly1({{0, 1}})));
  EXPECT_TRUE(w->coeffs[0].same_as(poly1({{5, 1}, {0, -1}})));
  for (int k = 1; k < 5; ++k) EXPECT_TRUE(w->coeffs[k].is_zero()) << k;
  EXPECT_EQ(w->to_string(), "T^5 + (g0^5 - 1)");
}

TEST(Annihilator, TrivialShortcuts) {
  Tower t({{5}});
  const TowerElem x = t.gen_x(0);
  auto w = annihilator(t, x, {x});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->degree(), 1u);
  EXPECT_TRUE(w->coeffs[0].same_as(poly1({{1, -1}})));

  auto r = annihilator(t, t.rational(Rational(3, 2)), {x});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->degree(), 1u);
  EXPECT_TRUE(r->coeffs[0].same_as(MFrac::from(MPoly::constant(1, Rational(-3, 2)))));
  EXPECT_THROW(annihilator(t, x, {}), PreconditionError);
}

TEST(Annihilator, X0OverZ0) {
  Tower t({{5}});
  const TowerElem z = z_element(t, 0);
  auto w = annihilator(t, t.gen_x(0), {z});
  ASSERT_TRUE(w);
  EXPECT_GE(w->degree(), 2u);
  EXPECT_TRUE(evaluate_witness(t, *w, t.gen_x(0)).is_zero());
}

TEST(Annihilator, SecondLevelOverMixedGenerators) {
  Tower t({{5, 7}, true});
  const TowerElem x1 = t.gen_x(1), y1 = t.gen_y(1), x0 = t.gen_x(0);
  const TowerElem e = t.add(t.mul(x0, y1), x1);
  auto w = annihilator(t, e, {x0, x1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->degree(), 7u);
  EXPECT_TRUE(evaluate_witness(t, *w, e).is_zero());
}

TEST(Annihilator, BlindAgreesWithElimination) {
  Tower t({{5}});
  BasisBudget blind;
  blind.strategy = AnnihilatorStrategy::blind;
  const TowerElem y = t.gen_y(0), x = t.gen_x(0);
  const TowerElem e = t.add(y, t.integer(2));
  auto a = annihilator(t, e, {x});
  auto b = annihilator(t, e, {x}, blind);
  ASSERT_TRUE(a && b);
  ASSERT_EQ(a->degree(), b->degree());
  for (std::size_t k = 0; k < a->coeffs.size(); ++k) EXPECT_TRUE(a->coeffs[k].same_as(b->coeffs[k])) << k;
  EXPECT_TRUE(evaluate_witness(t, *b, e).is_zero());
}

TEST(Annihilator, BlindGivesUpWithinDegree) {
  Tower t({{5}});
  BasisBudget blind;
  blind.strategy = AnnihilatorStrategy::blind;
  blind.blind_max_degree = 3;
  EXPECT_FALSE(annihilator(t, t.gen_y(0), {t.gen_x(0)}, blind));
}

TEST(RationalCoordinates, LinearRelationsAreVisible) {
  Tower t({{5}});
  const TowerElem x = t.gen_x(0), y = t.gen_y(0);
  const TowerElem a = t.div(y, t.add(x, t.one()));
  const TowerElem b = t.div(t.mul(x, y), t.add(x, t.one()));
  const TowerElem c = t.add(a, b);  // = y
  const auto co = rational_coordinates(t, {a, b, c, y});
  std::map<std::vector<std::uint32_t>, Rational> sum = co[0];
  for (const auto& [k, v] : co[1]) sum[k] += v;
  for (auto it = sum.begin(); it != sum.end();) it = sgn(it->second) == 0 ? sum.erase(it) : std::next(it);
  EXPECT_EQ(sum, co[2]);
  EXPECT_EQ(co[2], co[3]);
  EXPECT_NE(co[0], co[1]);
}

TEST(MemberBasis, IntrinsicBasisOnOneLevel) {
  Tower t({{5}});
  const auto A = BasisEnumeration::intrinsic(t);
  const auto r = member_basis_report(t, z_element(t, 0), A);
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.n, 0u);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->degree(), 1u);
  EXPECT_FALSE(member_basis(t, t.gen_x(0), A));
  EXPECT_FALSE(member_basis(t, t.add(t.gen_x(0), t.one()), A));
  EXPECT_FALSE(member_basis(t, t.integer(4), A));
  EXPECT_FALSE(member_basis(t, t.zero(), A));
}

TEST(MemberBasis, IntrinsicBasisOnTwoLevels) {
  Tower t({{5, 7}, true});
  const auto A = BasisEnumeration::intrinsic(t);
  const auto r = member_basis_report(t, z_element(t, 1), A);
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.n, 1u);
  EXPECT_TRUE(member_basis(t, z_element(t, 0), A));
  EXPECT_FALSE(member_basis(t, t.gen_x(1), A));
}

TEST(MemberBasis, GeneratorBasis) {
  Tower t({{5, 7}, true});
  const auto X = BasisEnumeration::generators(t);
  EXPECT_TRUE(member_basis(t, t.gen_x(1), X));
  EXPECT_TRUE(member_basis(t, t.gen_x(0), X));
  EXPECT_FALSE(member_basis(t, t.gen_y(1), X));
  EXPECT_FALSE(member_basis(t, t.gen_y(0), X));
  EXPECT_FALSE(member_basis(t, t.mul(t.gen_x(0), t.gen_x(1)), X));
}

TEST(MemberBasis, TwentyRandomNonBasisElements) {
  Tower t({{5}});
  const auto A = BasisEnumeration::intrinsic(t);
  const TowerElem z = z_element(t, 0);
  ElementSampler s(t, 11);
  int checked = 0;
  while (checked < 20) {
    const TowerElem e = s.element_over_x(1);
    if (t.eq(e, z)) continue;
    EXPECT_FALSE(member_basis(t, e, A)) << t.format(e);
    ++checked;
  }
}

TEST(MemberBasis, OrbitImagesOfZStayMembers) {
  Tower t({{5}});
  const auto A = BasisEnumeration::intrinsic(t);
  const TowerElem z = z_element(t, 0);
  for (RelabelChoice r = 0; r < 6; ++r) {
    auto [a, b] = apply_relabeling(t, r, t.gen_x(0), t.gen_y(0));
    const TowerElem img = t.substitute(z, GeneratorImages{{{0, a}}, {{0, b}}});
    EXPECT_TRUE(member_basis(t, img, A)) << r;
  }
}

TEST(MemberBasis, BudgetExhaustion) {
  Tower t({{5, 7}, true});
  BasisBudget b;
  b.max_prefix = 1;
  EXPECT_THROW(member_basis(t, t.gen_x(1), BasisEnumeration::intrinsic(t), b), BudgetExhausted);
}

TEST(Interdependence, BothDirections) {
  Tower t({{5}});
  auto [zx, xz] = interdependence_check(t, 0);
  EXPECT_LE(zx.degree(), 5u);
  EXPECT_GE(zx.degree(), 2u);
  EXPECT_TRUE(evaluate_witness(t, zx, z_element(t, 0)).is_zero());
  EXPECT_TRUE(evaluate_witness(t, xz, t.gen_x(0)).is_zero());
  EXPECT_TRUE(t.eq(intrinsic_basis(t, 0), z_element(t, 0)));
  EXPECT_THROW(interdependence_check(t, 1), PreconditionError);
}
