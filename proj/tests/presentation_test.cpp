#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fermat/presentation.hpp"
#include "support/golden.hpp"

namespace fermat {
namespace {

TEST(Enumerator, StartsWithLeaves) {
  Tower t({{5}, false});
  FormulaEnumerator e(t, 1);
  EXPECT_EQ(e.next(), t.zero(1));
  EXPECT_EQ(e.next(), t.one(1));
  EXPECT_EQ(e.next(), t.gen_x(0));
  EXPECT_EQ(e.next(), t.gen_y(0));
  EXPECT_EQ(e.next(), t.coerce(t.integer(-1), 1));
}

TEST(Enumerator, LevelZeroReachesSmallRationals) {
  Tower t({{}, false});
  FormulaEnumerator e(t, 0);
  std::set<std::string> seen;
  for (int i = 0; i < 400; ++i) seen.insert(e.next().rational().get_str());
  for (const char* q : {"0", "1", "-1", "2", "1/2", "3", "-1/2", "1/3", "4"}) {
    EXPECT_TRUE(seen.count(q)) << q;
  }
}

TEST(Canonical, BasicCodes) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  EXPECT_EQ(p->zero(), 0u);
  EXPECT_EQ(p->one(), 1u);
  const Code x = p->encode(t.gen_x(0)), y = p->encode(t.gen_y(0));
  EXPECT_EQ(p->add(x, p->zero()), x);
  EXPECT_EQ(p->mul(x, p->one()), x);
  const Code y4 = p->encode(t.pow(t.gen_y(0), 4));
  EXPECT_EQ(p->mul(y, y4), p->encode(t.sub(t.one(), t.pow(t.gen_x(0), 5))));
  EXPECT_EQ(p->element(x), t.gen_x(0));
  EXPECT_THROW(p->inv(p->zero()), DivisionByZero);
  EXPECT_THROW(p->add(x, 100000), PreconditionError);
  EXPECT_THROW(ground_truth_iso(*p), PreconditionError);
}

TEST(Canonical, InjectiveOnFirst200) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  p->realize(200);
  std::vector<TowerElem> v;
  for (Code c = 0; c < 200; ++c) v.push_back(p->element(c));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) ASSERT_FALSE(t.eq(v[i], v[j])) << i << " " << j;
}

TEST(Canonical, EnumerateMatchesRealizationWithoutOps) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  for (std::size_t n = 0; n < 64; ++n) EXPECT_EQ(p->enumerate(n), n);
}

TEST(Canonical, OpsRespectEq) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  p->realize(64);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Code a = rng() % 64, b = rng() % 64;
    // a' = a + 0 and b' = b * 1 reach the same elements by other routes.
    const Code a2 = p->add(a, p->zero()), b2 = p->mul(b, p->one());
    EXPECT_EQ(p->add(a, b), p->add(a2, b2));
    EXPECT_EQ(p->mul(a, b), p->mul(a2, b2));
    EXPECT_TRUE(t.eq(p->element(p->add(a, b)), t.add(p->element(a), p->element(b))));
  }
}

TEST(Canonical, TwoByTwoTables) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  const std::string dump = table_dump(*p, 2);
  const Code two = p->encode(t.integer(2));
  EXPECT_NE(dump.find("add\n0 1\n1 " + std::to_string(two) + "\nmul\n0 0\n0 1\n"), std::string::npos)
      << dump;
  EXPECT_THROW(table_dump(*p, 0), PreconditionError);
}

TEST(Canonical, GoldenDump) {
  Tower t({{5}, false});
  auto p = Presentation::canonical(t);
  EXPECT_TRUE(testing::matches_golden("canonical_5_dump8.txt", table_dump(*p, 8)));
}

TEST(Scrambled, IdentityAgreesWithCanonical) {
  Tower t({{5, 7}, true});
  auto c = Presentation::canonical(t);
  auto s = Presentation::scrambled(t, ScrambleSpec{});
  c->realize(24);
  s->realize(24);
  for (Code a = 0; a < 24; ++a) {
    for (Code b = 0; b < 24; ++b) {
      ASSERT_EQ(c->add(a, b), s->add(a, b));
      ASSERT_EQ(c->mul(a, b), s->mul(a, b));
    }
  }
  const std::string dc = table_dump(*c, 10), ds = table_dump(*s, 10);
  EXPECT_EQ(dc.substr(dc.find("add\n")), ds.substr(ds.find("add\n")));
}

TEST(Scrambled, SwapAllMapsXToY) {
  Tower t({{5, 7}, true});
  auto s = Presentation::scrambled(t, ScrambleSpec::parse("swap=all", 9, t.depth()));
  const GroundTruth g = ground_truth_iso(*s);
  EXPECT_EQ(g.sigma.x.at(0), t.gen_y(0));
  EXPECT_EQ(g.sigma.y.at(1), t.gen_x(1));
  EXPECT_TRUE(t.eq(g.value(g.image_code(t.gen_x(0))), t.gen_y(0)));
}

TEST(Scrambled, RelabelChoiceTwo) {
  Tower t({{5}, false});
  ScrambleSpec spec;
  spec.relabel = {2};
  auto s = Presentation::scrambled(t, spec);
  const GroundTruth g = ground_truth_iso(*s);
  const TowerElem x = t.gen_x(0), y = t.gen_y(0);
  EXPECT_TRUE(t.eq(g.sigma.x.at(0), t.neg(t.div(y, x))));
  EXPECT_TRUE(t.eq(g.sigma.y.at(0), t.inv(x)));
  EXPECT_TRUE(t.fermat_form(0, g.sigma.x.at(0), g.sigma.y.at(0)).is_zero());
}

TEST(Scrambled, IdentityFixesGenerators) {
  Tower t({{5}, false});
  auto s = Presentation::scrambled(t, ScrambleSpec{{}, {}, 3});
  const GroundTruth g = ground_truth_iso(*s);
  EXPECT_EQ(g.sigma.x.at(0), t.gen_x(0));
  EXPECT_EQ(g.sigma.y.at(0), t.gen_y(0));
}

TEST(Scrambled, InvalidSpecs) {
  Tower t({{5}, false});
  ScrambleSpec bad;
  bad.relabel = {6};
  EXPECT_THROW(Presentation::scrambled(t, bad), PreconditionError);
  EXPECT_THROW(ScrambleSpec::parse("relabel=7", 0, 1), PreconditionError);
  EXPECT_THROW(ScrambleSpec::parse("shuffle=1", 0, 1), PreconditionError);
  EXPECT_THROW(Presentation::scrambled(t, ScrambleSpec{{3}, {}, 0}), PreconditionError);
}

TEST(Scrambled, SpecText) {
  const ScrambleSpec s = ScrambleSpec::parse("swap=1,0;relabel=2,5", 7, 2);
  EXPECT_EQ(s.describe(), "swap={0,1} relabel=[2,5] seed=7");
  EXPECT_EQ(ScrambleSpec::parse("swap=all", 0, 3).swapped, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(ScrambleSpec::parse("identity", 4, 2), (ScrambleSpec{{}, {}, 4}));
}

TEST(Scrambled, RenumberingIsABijection) {
  Tower t({{5}, false});
  auto s = Presentation::scrambled(t, ScrambleSpec{{0}, {3}, 12345});
  const GroundTruth g = ground_truth_iso(*s);
  s->realize(100);
  const std::size_t n = s->realized();
  EXPECT_GE(n, 100u);
  std::vector<TowerElem> vals;
  for (Code c = 0; c < n; ++c) vals.push_back(g.value(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ASSERT_FALSE(t.eq(vals[i], vals[j]));
  std::set<Code> hit;
  for (std::size_t k = 0; k < 60; ++k) hit.insert(s->enumerate(k));
  EXPECT_EQ(hit.size(), 60u);
  // The shuffle actually moves codes: 0 and 1 are not both in place.
  EXPECT_FALSE(s->zero() == 0 && s->one() == 1);
}

TEST(Scrambled, FieldAxiomsOnFirst50Codes) {
  Tower t({{5}, false});
  auto s = Presentation::scrambled(t, ScrambleSpec{{0}, {4}, 99});
  s->realize(50);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const Code a = rng() % 50, b = rng() % 50, c = rng() % 50;
    ASSERT_EQ(s->add(s->add(a, b), c), s->add(a, s->add(b, c)));
    ASSERT_EQ(s->mul(s->mul(a, b), c), s->mul(a, s->mul(b, c)));
    ASSERT_EQ(s->add(a, b), s->add(b, a));
    ASSERT_EQ(s->mul(a, b), s->mul(b, a));
    ASSERT_EQ(s->mul(a, s->add(b, c)), s->add(s->mul(a, b), s->mul(a, c)));
    ASSERT_EQ(s->add(a, s->neg(a)), s->zero());
    ASSERT_EQ(s->add(a, s->zero()), a);
    ASSERT_EQ(s->mul(a, s->one()), a);
    if (a != s->zero()) ASSERT_EQ(s->mul(a, s->inv(a)), s->one());
  }
}

TEST(Scrambled, PsiIsHomomorphicOnSamples) {
  Tower t({{5}, false});
  auto s = Presentation::scrambled(t, ScrambleSpec{{}, {5}, 17});
  const GroundTruth g = ground_truth_iso(*s);
  const TowerElem x = t.gen_x(0), y = t.gen_y(0);
  const std::vector<TowerElem> es = {x, y, t.add(x, t.one()), t.div(y, x), t.integer(3)};
  for (const auto& a : es) {
    for (const auto& b : es) {
      EXPECT_EQ(g.image_code(t.add(a, b)), s->add(g.image_code(a), g.image_code(b)));
      EXPECT_EQ(g.image_code(t.mul(a, b)), s->mul(g.image_code(a), g.image_code(b)));
    }
  }
  EXPECT_EQ(s->add(s->pow(g.image_code(x), 5), s->pow(g.image_code(y), 5)), s->one());
}

TEST(Scrambled, DeterministicDumps) {
  Tower t({{5, 7}, true});
  const ScrambleSpec spec = ScrambleSpec::parse("swap=0;relabel=3,1", 2024, 2);
  auto a = Presentation::scrambled(t, spec);
  auto b = Presentation::scrambled(t, spec);
  EXPECT_EQ(table_dump(*a, 12), table_dump(*b, 12));
  EXPECT_TRUE(testing::matches_golden("scrambled_5_7_dump12.txt", table_dump(*a, 12)));
}

}  // namespace
}  // namespace fermat
