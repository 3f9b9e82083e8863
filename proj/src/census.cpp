#include "fermat/census.hpp"

#include <algorithm>
#include <unordered_map>

#include "fermat/error.hpp"

namespace fermat {

namespace {

void check_index(const Tower& t, std::size_t i) {
  if (i >= t.depth()) {
    throw PreconditionError("level " + std::to_string(i) + " is outside a tower of depth " +
                            std::to_string(t.depth()));
  }
}

}  // namespace

std::vector<SolutionPair> trivial_solutions(const Tower& t, std::size_t i) {
  check_index(t, i);
  const TowerElem zero = t.zero(i + 1), one = t.one(i + 1);
  return {{zero, one, SolutionKind::trivial}, {one, zero, SolutionKind::trivial}};
}

std::vector<SolutionPair> six_solutions(const Tower& t, std::size_t i) {
  check_index(t, i);
  std::vector<SolutionPair> out;
  for (RelabelChoice r = 0; r < 6; ++r) {
    auto [a, b] = apply_relabeling(t, r, t.gen_x(i), t.gen_y(i));
    if (!t.fermat_form(i, a, b).is_zero()) {
      throw InvariantViolation("relabeling " + std::to_string(r) + " breaks the relation");
    }
    out.push_back({a, b, SolutionKind::nontrivial});
  }
  return out;
}

std::vector<SolutionPair> solution_catalog(const Tower& t, std::size_t i) {
  auto out = trivial_solutions(t, i);
  for (auto& s : six_solutions(t, i)) out.push_back(std::move(s));
  return out;
}

TowerElem z_closed_form(const Tower& t, std::size_t i) {
  check_index(t, i);
  const std::uint64_t p = t.prime(i);
  const TowerElem x = t.gen_x(i), y = t.gen_y(i), one = t.one();
  const TowerElem a = t.div(t.sub(one, x), t.sub(one, t.pow(x, p)));
  const TowerElem b = t.div(t.sub(x, one), x);
  const TowerElem c = t.div(t.add(t.mul(x, x), one), x);
  return t.add(t.add(t.mul(a, t.pow(y, p - 1)), t.mul(b, y)), c);
}

TowerElem z_element(const Tower& t, std::size_t i) {
  TowerElem z = t.zero(i + 1);
  for (const auto& s : six_solutions(t, i)) z = t.add(z, s.x);
  if (!t.eq(z, z_closed_form(t, i))) {
    throw InvariantViolation("z at level " + std::to_string(i) + " differs from its closed form");
  }
  return z;
}

// ---------------------------------------------------------------------------
// Relabeling group

std::vector<Relabeling> relabelings() {
  const MFrac X = MFrac::from(MPoly::variable(2, 0));
  const MFrac Y = MFrac::from(MPoly::variable(2, 1));
  const MFrac ix = X.inverse(), iy = Y.inverse();
  return {
      {0, "(x, y)", X, Y},
      {1, "(y, x)", Y, X},
      {2, "(-y/x, 1/x)", -(Y * ix), ix},
      {3, "(1/x, -y/x)", ix, -(Y * ix)},
      {4, "(-x/y, 1/y)", -(X * iy), iy},
      {5, "(1/y, -x/y)", iy, -(X * iy)},
  };
}

namespace {

MFrac substitute_pair(const MFrac& f, const MFrac& x, const MFrac& y) {
  const std::vector<MFrac> images = {x, y};
  const std::function<MFrac(const Rational&)> constant = [](const Rational& c) {
    return MFrac::from(MPoly::constant(2, c));
  };
  const std::function<MFrac(const MFrac&, const MFrac&)> add = [](const MFrac& a, const MFrac& b) {
    return a + b;
  };
  const std::function<MFrac(const MFrac&, const MFrac&)> mul = [](const MFrac& a, const MFrac& b) {
    return a * b;
  };
  const MFrac n = evaluate_mpoly(f.num, images, constant, add, mul);
  const MFrac d = evaluate_mpoly(f.den, images, constant, add, mul);
  return n * d.inverse();
}

}  // namespace

std::array<unsigned, 6> RelabelingGroup::order_profile() const {
  auto o = orders;
  std::sort(o.begin(), o.end());
  return o;
}

RelabelingGroup relabeling_group() {
  const auto rs = relabelings();
  RelabelingGroup g;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      const MFrac cx = substitute_pair(rs[a].x, rs[b].x, rs[b].y);
      const MFrac cy = substitute_pair(rs[a].y, rs[b].x, rs[b].y);
      bool found = false;
      for (std::size_t c = 0; c < 6 && !found; ++c) {
        if (cx.same_as(rs[c].x) && cy.same_as(rs[c].y)) {
          g.table[a][b] = static_cast<RelabelChoice>(c);
          found = true;
        }
      }
      if (!found) {
        throw InvariantViolation("relabelings not closed: " + rs[a].formula + " o " + rs[b].formula);
      }
    }
  }
  for (std::size_t a = 0; a < 6; ++a) {
    std::size_t cur = a;
    unsigned k = 1;
    while (cur != 0) {
      cur = g.table[a][cur];
      ++k;
      if (k > 6) throw InvariantViolation("relabeling " + rs[a].formula + " has no finite order");
    }
    g.orders[a] = k;
  }
  if (g.order_profile() != std::array<unsigned, 6>{1, 2, 2, 2, 3, 3}) {
    throw InvariantViolation("relabeling group does not have the order profile of S3");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Bounded searches

namespace {

struct Hit {
  Code a;
  Code b;
  TowerElem x;
  TowerElem y;
};

std::vector<Hit> search(const Tower& t, const Presentation& pres, std::size_t i, std::size_t bound) {
  const std::uint64_t p = t.prime(i);
  pres.realize(bound);
  std::vector<TowerElem> elems(bound), powers(bound);
  std::unordered_map<TowerElem, std::vector<Code>, TowerElemHash> by_power;
  for (Code c = 0; c < bound; ++c) {
    elems[c] = pres.element(c);
    powers[c] = t.pow(elems[c], p);
    by_power[powers[c]].push_back(c);
  }
  const TowerElem one = t.one(pres.level());
  std::vector<Hit> hits;
  for (Code a = 0; a < bound; ++a) {
    auto it = by_power.find(t.sub(one, powers[a]));
    if (it == by_power.end()) continue;
    for (Code b : it->second) hits.push_back({a, b, elems[a], elems[b]});
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& u, const Hit& v) { return std::tie(u.a, u.b) < std::tie(v.a, v.b); });
  return hits;
}

const SolutionPair* find_in(const Tower& t, const std::vector<SolutionPair>& cat, const Hit& h) {
  for (const auto& s : cat) {
    if (t.eq(s.x, h.x) && t.eq(s.y, h.y)) return &s;
  }
  return nullptr;
}

}  // namespace

std::vector<SolutionPair> bounded_solution_search(const Tower& t, std::size_t i, std::size_t bound) {
  check_index(t, i);
  if (bound < 1) throw PreconditionError("search bound must be at least 1");
  const auto pres = Presentation::canonical(t, i + 1);
  const auto cat = solution_catalog(t, i);
  std::vector<SolutionPair> out;
  for (const auto& h : search(t, *pres, i, bound)) {
    const SolutionPair* s = find_in(t, cat, h);
    if (!s) {
      throw InvariantViolation("solution outside the catalog at codes (" + std::to_string(h.a) +
                               ", " + std::to_string(h.b) + "): x = " + t.format(h.x) +
                               ", y = " + t.format(h.y));
    }
    out.push_back({h.x, h.y, s->kind});
  }
  return out;
}

ExploratoryResult exploratory_solution_search(const Tower& t, std::size_t i, std::size_t bound) {
  check_index(t, i);
  if (bound < 1) throw PreconditionError("search bound must be at least 1");
  const auto pres = Presentation::canonical(t);
  const auto cat = solution_catalog(t, i);
  ExploratoryResult r;
  for (const auto& h : search(t, *pres, i, bound)) {
    if (const SolutionPair* s = find_in(t, cat, h)) {
      r.in_catalog.push_back({h.x, h.y, s->kind});
    } else {
      r.outside_catalog.push_back({h.x, h.y, SolutionKind::nontrivial});
    }
  }
  return r;
}

PsiReport psi_definition_report(const Tower& t, std::size_t i, std::size_t bound) {
  check_index(t, i);
  if (bound < 1) throw PreconditionError("search bound must be at least 1");
  const auto pres = Presentation::canonical(t, i + 1);
  PsiReport r;
  std::vector<Code> seen;
  for (const auto& h : search(t, *pres, i, bound)) {
    if (h.a == pres->zero() || h.a == pres->one()) continue;
    if (std::find(seen.begin(), seen.end(), h.a) != seen.end()) continue;
    seen.push_back(h.a);
    r.witnesses.push_back(h.x);
  }
  if (r.witnesses.size() < 6) {
    throw InsufficientBound("only " + std::to_string(r.witnesses.size()) +
                            " witnesses among the first " + std::to_string(bound) + " codes");
  }
  if (r.witnesses.size() > 6) {
    throw InvariantViolation(std::to_string(r.witnesses.size()) +
                             " witnesses found where exactly six are expected");
  }
  r.sum = t.zero(i + 1);
  for (const auto& w : r.witnesses) r.sum = t.add(r.sum, w);
  if (!t.eq(r.sum, z_element(t, i))) {
    throw InvariantViolation("sum of the witnesses differs from z");
  }
  return r;
}

TowerElem psi_definition_check(const Tower& t, std::size_t i, std::size_t bound) {
  return psi_definition_report(t, i, bound).sum;
}

}  // namespace fermat
