#include "fermat/basis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fermat/census.hpp"
#include "fermat/error.hpp"
#include "fermat/rational_field.hpp"

namespace fermat {

namespace {

std::size_t needed_levels(const Tower& tower, const TowerElem& a) {
  const auto s = tower.support(a);
  return s.empty() ? 0 : *std::max_element(s.begin(), s.end()) + 1;
}

MFrac frac_add(const MFrac& a, const MFrac& b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (a.den == b.den) return {a.num + b.num, a.den};
  MPoly q;
  if (try_exact_div(b.den, a.den, q)) return {a.num * q + b.num, b.den};
  if (try_exact_div(a.den, b.den, q)) return {a.num + b.num * q, a.den};
  return a + b;
}

MFrac tidy(MFrac f) {
  if (f.den.is_constant()) {
    const Rational c = f.den.constant_value();
    return {f.num.scaled(1 / c), MPoly::constant(f.den.nvars(), Rational(1))};
  }
  return f;
}

MFrac poly_to_mfrac(const Polynomial<TowerElem>& p, const MPoly& var, std::size_t nv) {
  MFrac acc{MPoly(nv), MPoly::constant(nv, Rational(1))};
  MPoly pw = MPoly::constant(nv, Rational(1));
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    if (!p.coeffs[k].is_zero()) {
      const MFrac c = to_mfrac(p.coeffs[k], nv);
      acc = frac_add(acc, {c.num * pw, c.den});
    }
    pw = pw * var;
  }
  return acc;
}

MPoly eval_gens_poly(const MPoly& p, std::size_t first, std::size_t count) {
  // Moves variables first .. first+count-1 to 0 .. count-1 and drops the rest.
  MPoly out(count);
  for (const auto& [m, c] : p.terms()) {
    Monomial r(count, 0);
    for (std::size_t j = 0; j < count; ++j) r[j] = m[first + j];
    out.add_term(r, c);
  }
  return out;
}

// a = num / den with den built from the top-level coefficient denominators,
// so both parts are free of denominators in the top generator.
std::pair<TowerElem, TowerElem> split(const Tower& tower, const TowerElem& a) {
  if (a.level() == 0) return {a, tower.one()};
  const std::size_t g = a.level() - 1;
  const CoeffField cf = tower.coeff_field(g);
  const LevelField field = tower.field(g);
  Polynomial<TowerElem> lcm = poly::one(field);
  for (const auto& c : a.ys().coeffs) {
    if (!c.num.is_zero()) lcm = cf.lcm(lcm, c.den);
  }
  if (lcm.degree() == 0) return {a, tower.one()};
  YPoly ys;
  ys.coeffs.push_back(Coeff{lcm, poly::one(field)});
  const TowerElem den = TowerElem::from_ypoly(a.level(), std::move(ys));
  return {tower.mul(a, den), den};
}

// Evaluates polynomials in the generators after multiplying through by the
// generator denominators, so most products avoid fraction normalization.
class ClearedEvaluator {
 public:
  ClearedEvaluator(const Tower& tower, const std::vector<TowerElem>& gens) : tower_(tower) {
    for (const auto& g : gens) {
      auto [n, d] = split(tower, g);
      num_.push_back({tower.one(), n});
      den_.push_back({tower.one(), d});
    }
  }

  /// p(gens) * prod_j den_j^e_j with e_j = deg_j(p) padded to `degrees`.
  TowerElem value(const MPoly& p, const Monomial& degrees) {
    TowerElem acc = tower_.zero();
    for (const auto& [m, c] : p.terms()) {
      TowerElem term = tower_.rational(c);
      for (std::size_t j = 0; j < m.size(); ++j) {
        term = tower_.mul(term, power(num_[j], m[j]));
        term = tower_.mul(term, power(den_[j], degrees[j] - m[j]));
      }
      acc = tower_.add(acc, term);
    }
    return acc;
  }

  /// Zero iff p(gens) is zero.
  bool vanishes(const MPoly& p) { return value(p, degrees_of({p})).is_zero(); }

  static Monomial degrees_of(const std::vector<MPoly>& ps) {
    Monomial d;
    for (const auto& p : ps) {
      for (const auto& [m, c] : p.terms()) {
        if (d.size() < m.size()) d.resize(m.size(), 0);
        for (std::size_t j = 0; j < m.size(); ++j) d[j] = std::max(d[j], m[j]);
      }
    }
    return d;
  }

  /// Zero iff sum_k ps[k](gens) t^k is zero (the denominators of t and the
  /// generators are nonzero). Horner in t, so the large partial sums are
  /// only ever multiplied by the small numerator of t.
  bool annihilates(const std::vector<MPoly>& ps, const TowerElem& t) {
    const Monomial degrees = degrees_of(ps);
    auto [tn, td] = split(tower_, t);
    std::map<Monomial, TowerElem> gen_terms;
    auto gen_term = [&](const Monomial& m) -> const TowerElem& {
      auto it = gen_terms.find(m);
      if (it != gen_terms.end()) return it->second;
      TowerElem v = tower_.one();
      for (std::size_t j = 0; j < m.size(); ++j) {
        v = tower_.mul(v, power(num_[j], m[j]));
        v = tower_.mul(v, power(den_[j], degrees[j] - m[j]));
      }
      return gen_terms.emplace(m, std::move(v)).first->second;
    };
    std::vector<TowerElem> tdp{tower_.one()};
    TowerElem acc = tower_.zero();
    for (std::size_t k = ps.size(); k-- > 0;) {
      acc = tower_.mul(acc, tn);
      if (ps[k].is_zero()) continue;
      TowerElem inner = tower_.zero();
      for (const auto& [m, c] : ps[k].terms()) {
        inner = tower_.add(inner, tower_.mul(tower_.rational(c), gen_term(m)));
      }
      while (tdp.size() < ps.size() - k) tdp.push_back(tower_.mul(tdp.back(), td));
      acc = tower_.add(acc, tower_.mul(inner, tdp[ps.size() - 1 - k]));
    }
    return acc.is_zero();
  }

 private:
  const TowerElem& power(std::vector<TowerElem>& pw, std::uint32_t e) {
    while (pw.size() <= e) pw.push_back(tower_.mul(pw.back(), pw[1]));
    return pw[e];
  }

  const Tower& tower_;
  std::vector<std::vector<TowerElem>> num_, den_;
};

QPoly to_qpoly(const MPoly& p) {
  QPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (out.coeffs.size() <= m[0]) out.coeffs.resize(m[0] + 1, Rational(0));
    out.coeffs[m[0]] = c;
  }
  return out;
}

MPoly from_qpoly(const QPoly& p) {
  MPoly out(1);
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) out.add_term(Monomial{static_cast<std::uint32_t>(k)}, p.coeffs[k]);
  return out;
}

// Turns P(g, T) = sum_k cs[k](g) T^k into a witness verified on P itself, dropping
// coefficients that vanish at the generators and, for one generator, the
// content in Q[g].
std::optional<AnnihilatorWitness> finish(const Tower& tower, const TowerElem& t,
                                         const std::vector<TowerElem>& gens,
                                         std::vector<MPoly> cs) {
  const std::size_t n = gens.size();
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
  std::size_t shift = 0;
  while (shift < cs.size() && cs[shift].is_zero()) ++shift;
  cs.erase(cs.begin(), cs.begin() + static_cast<long>(shift));
  if (cs.size() < 2) return std::nullopt;
  if (n == 1) {
    const RationalField q;
    QPoly g;
    for (const auto& c : cs) {
      if (!c.is_zero()) g = g.is_zero() ? poly::monic(q, to_qpoly(c)) : poly::gcd(q, g, to_qpoly(c));
    }
    if (g.degree() > 0) {
      for (auto& c : cs) {
        if (!c.is_zero()) c = from_qpoly(poly::exact_quotient(q, to_qpoly(c), g));
      }
    }
  }
  ClearedEvaluator ev(tower, gens);
  while (cs.size() >= 2 && ev.vanishes(cs.back())) cs.pop_back();
  if (cs.size() < 2 || !ev.annihilates(cs, t)) return std::nullopt;

  AnnihilatorWitness w;
  w.gens = gens;
  const Rational unit = 1 / cs.back().leading().second;
  const MPoly den = cs.back().scaled(unit);
  for (const auto& c : cs) {
    if (c.is_zero()) {
      w.coeffs.push_back(MFrac::from(MPoly(n)));
    } else if (c.scaled(unit) == den) {
      w.coeffs.push_back(MFrac::from(MPoly::constant(n, Rational(1))));
    } else {
      w.coeffs.push_back(tidy({c.scaled(unit), den}));
    }
  }
  return w;
}

struct EliminationOutcome {
  std::optional<AnnihilatorWitness> witness;
  bool had_candidates = false;
};

// Resultants from probable_resultant are safe here because every candidate
// is verified; `exact` is the retry when no candidate verifies.
EliminationOutcome by_elimination(const Tower& tower, const TowerElem& t,
                                  const std::vector<TowerElem>& gens, const BasisBudget& budget,
                                  bool exact) {
  std::size_t levels = needed_levels(tower, t);
  for (const auto& g : gens) levels = std::max(levels, needed_levels(tower, g));
  const std::size_t n = gens.size();
  const std::size_t nv = 2 * levels + n + 1;
  const std::size_t tv = 2 * levels + n;
  auto var = [&](std::size_t v) { return MPoly::variable(nv, v); };

  std::vector<MPoly> polys;
  for (std::size_t i = 0; i < levels; ++i) {
    const std::uint64_t p = tower.prime(i);
    polys.push_back(var(2 * i).pow(p) + var(2 * i + 1).pow(p) - MPoly::constant(nv, Rational(1)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const MFrac f = to_mfrac(gens[j], nv);
    polys.push_back(var(2 * levels + j) * f.den - f.num);
  }
  const MFrac ft = to_mfrac(t, nv);
  polys.push_back(var(tv) * ft.den - ft.num);

  // Keep the polynomials linked to T through shared curve variables.
  auto curve_vars = [&](const MPoly& p) {
    std::set<std::size_t> s;
    for (std::size_t v = 0; v < 2 * levels; ++v) {
      if (p.involves(v)) s.insert(v);
    }
    return s;
  };
  std::vector<bool> in(polys.size(), false);
  in.back() = true;
  std::set<std::size_t> vars = curve_vars(polys.back());
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (in[k]) continue;
      const auto s = curve_vars(polys[k]);
      if (std::any_of(s.begin(), s.end(), [&](std::size_t v) { return vars.count(v) > 0; })) {
        in[k] = true;
        vars.insert(s.begin(), s.end());
        grew = true;
      }
    }
  }
  std::vector<MPoly> work;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (in[k]) work.push_back(polys[k]);
  }
  if (work.size() <= vars.size()) return {};

  // y before x, top level first.
  std::vector<std::size_t> order;
  for (std::size_t i = levels; i-- > 0;) {
    if (vars.count(2 * i + 1)) order.push_back(2 * i + 1);
    if (vars.count(2 * i)) order.push_back(2 * i);
  }
  for (std::size_t v : order) {
    std::vector<MPoly> with, without;
    for (auto& p : work) (p.involves(v) ? with : without).push_back(std::move(p));
    if (with.empty()) {
      work = std::move(without);
      continue;
    }
    auto piv = std::min_element(with.begin(), with.end(), [&](const MPoly& a, const MPoly& b) {
      return std::make_pair(a.degree_in(v), a.terms().size()) <
             std::make_pair(b.degree_in(v), b.terms().size());
    });
    const MPoly pivot = *piv;
    with.erase(piv);
    for (const auto& q : with) {
      MPoly r = exact ? resultant(pivot, q, v) : probable_resultant(pivot, q, v);
      if (r.is_zero()) continue;
      r = r.scaled(1 / r.leading().second);
      if (r.terms().size() > budget.max_terms) return {};
      without.push_back(std::move(r));
    }
    work = std::move(without);
  }

  std::vector<const MPoly*> cands;
  for (const auto& p : work) {
    if (p.involves(tv)) cands.push_back(&p);
  }
  std::sort(cands.begin(), cands.end(), [&](const MPoly* a, const MPoly* b) {
    return std::make_pair(a->degree_in(tv), a->terms().size()) <
           std::make_pair(b->degree_in(tv), b->terms().size());
  });
  EliminationOutcome out;
  for (const MPoly* p : cands) {
    std::vector<MPoly> cs;
    for (const auto& c : p->coeffs_in(tv)) cs.push_back(eval_gens_poly(c, 2 * levels, n));
    out.had_candidates = true;
    if ((out.witness = finish(tower, t, gens, std::move(cs)))) return out;
  }
  return out;
}

// Exponent vectors of total degree <= d in n variables.
void exponents(std::size_t n, std::size_t d, Monomial& cur, std::size_t pos,
               std::vector<Monomial>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= d; ++e) {
    cur[pos] = e;
    exponents(n, d - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

// Basis of the nullspace of the matrix whose columns are `cols`.
std::vector<std::vector<Rational>> nullspace(
    const std::vector<std::map<std::vector<std::uint32_t>, Rational>>& cols) {
  std::map<std::vector<std::uint32_t>, std::size_t> row_of;
  for (const auto& c : cols) {
    for (const auto& [k, v] : c) row_of.emplace(k, row_of.size());
  }
  const std::size_t m = cols.size();
  std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(m, Rational(0)));
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& [k, v] : cols[j]) a[row_of[k]][j] = v;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m && r < a.size(); ++j) {
    std::size_t i = r;
    while (i < a.size() && sgn(a[i][j]) == 0) ++i;
    if (i == a.size()) continue;
    std::swap(a[i], a[r]);
    const Rational inv = 1 / a[r][j];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == r || sgn(a[k][j]) == 0) continue;
      const Rational f = a[k][j];
      for (std::size_t c = j; c < m; ++c) a[k][c] -= f * a[r][c];
    }
    pivot_col.push_back(j);
    ++r;
  }
  std::vector<std::vector<Rational>> out;
  std::vector<bool> is_pivot(m, false);
  for (auto j : pivot_col) is_pivot[j] = true;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<AnnihilatorWitness> by_blind(const Tower& tower, const TowerElem& t,
                                           const std::vector<TowerElem>& gens,
                                           const BasisBudget& budget) {
  const std::size_t n = gens.size();
  std::vector<TowerElem> tpow{tower.one()};
  std::map<Monomial, TowerElem> gpow;
  auto gen_power = [&](const Monomial& a) {
    auto it = gpow.find(a);
    if (it != gpow.end()) return it->second;
    TowerElem v = tower.one();
    for (std::size_t j = 0; j < n; ++j) v = tower.mul(v, tower.pow(gens[j], a[j]));
    return gpow.emplace(a, v).first->second;
  };
  for (std::size_t d = 1; d <= budget.blind_max_degree; ++d) {
    while (tpow.size() <= d) tpow.push_back(tower.mul(tpow.back(), t));
    std::vector<Monomial> alphas;
    Monomial cur(n, 0);
    exponents(n, d, cur, 0, alphas);
    std::vector<std::pair<Monomial, std::size_t>> index;
    std::vector<TowerElem> elems;
    for (std::size_t k = 0; k <= d; ++k) {
      for (const auto& a : alphas) {
        index.emplace_back(a, k);
        elems.push_back(tower.mul(gen_power(a), tpow[k]));
      }
    }
    for (const auto& v : nullspace(rational_coordinates(tower, elems))) {
      std::vector<MPoly> cs(d + 1, MPoly(n));
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (sgn(v[c]) != 0) cs[index[c].second].add_term(index[c].first, v[c]);
      }
      if (auto w = finish(tower, t, gens, std::move(cs))) return w;
    }
  }
  return std::nullopt;
}

std::vector<std::map<std::vector<std::uint32_t>, Rational>> coords_at(
    const Tower& tower, std::size_t level, const std::vector<TowerElem>& es) {
  std::vector<std::map<std::vector<std::uint32_t>, Rational>> out(es.size());
  if (level == 0) {
    for (std::size_t e = 0; e < es.size(); ++e) {
      if (!es[e].is_zero()) out[e][{}] = es[e].rational();
    }
    return out;
  }
  const std::size_t g = level - 1;
  const LevelField field = tower.field(g);
  const CoeffField cf = tower.coeff_field(g);
  Polynomial<TowerElem> lcm = poly::one(field);
  for (const auto& e : es) {
    for (const auto& c : e.ys().coeffs) {
      if (!c.num.is_zero()) lcm = cf.lcm(lcm, c.den);
    }
  }
  struct Slot {
    std::size_t elem;
    std::uint32_t j;
    std::uint32_t k;
  };
  std::vector<Slot> slots;
  std::vector<TowerElem> sub;
  for (std::size_t e = 0; e < es.size(); ++e) {
    const auto& ys = es[e].ys();
    for (std::size_t j = 0; j < ys.coeffs.size(); ++j) {
      const Coeff& c = ys.coeffs[j];
      if (c.num.is_zero()) continue;
      const auto scaled = poly::mul(field, c.num, poly::exact_quotient(field, lcm, c.den));
      for (std::size_t k = 0; k < scaled.coeffs.size(); ++k) {
        if (scaled.coeffs[k].is_zero()) continue;
        slots.push_back({e, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)});
        sub.push_back(tower.coerce(scaled.coeffs[k], g));
      }
    }
  }
  const auto inner = coords_at(tower, g, sub);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    for (const auto& [key, v] : inner[s]) {
      std::vector<std::uint32_t> full{slots[s].j, slots[s].k};
      full.insert(full.end(), key.begin(), key.end());
      out[slots[s].elem][full] = v;
    }
  }
  return out;
}

AnnihilatorWitness linear_witness(const std::vector<TowerElem>& gens, const MPoly& constant_term) {
  const std::size_t n = gens.size();
  AnnihilatorWitness w;
  w.gens = gens;
  w.coeffs = {MFrac::from(constant_term), MFrac::from(MPoly::constant(n, Rational(1)))};
  return w;
}

}  // namespace

MFrac to_mfrac(const TowerElem& a, std::size_t nv) {
  if (a.level() == 0) return MFrac::from(MPoly::constant(nv, a.rational()));
  const std::size_t g = a.level() - 1;
  const MPoly x = MPoly::variable(nv, 2 * g), y = MPoly::variable(nv, 2 * g + 1);
  MFrac acc{MPoly(nv), MPoly::constant(nv, Rational(1))};
  MPoly ypow = MPoly::constant(nv, Rational(1));
  for (const auto& c : a.ys().coeffs) {
    if (!c.num.is_zero()) {
      const MFrac n = poly_to_mfrac(c.num, x, nv), d = poly_to_mfrac(c.den, x, nv);
      acc = frac_add(acc, tidy({n.num * d.den * ypow, n.den * d.num}));
    }
    ypow = ypow * y;
  }
  return tidy(acc);
}

std::vector<std::map<std::vector<std::uint32_t>, Rational>> rational_coordinates(
    const Tower& tower, const std::vector<TowerElem>& elems) {
  std::size_t level = 0;
  for (const auto& e : elems) level = std::max(level, e.level());
  std::vector<TowerElem> es;
  for (const auto& e : elems) es.push_back(tower.coerce(e, level));
  return coords_at(tower, level, es);
}

std::string AnnihilatorWitness::to_string() const {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < gens.size(); ++j) names.push_back("g" + std::to_string(j));
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const MFrac& c = coeffs[k];
    if (c.num.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c.den.is_constant() && c.num.is_constant() &&
                      c.num.constant_value() == c.den.constant_value();
    if (!unit || k == 0) {
      os << "(" << c.num.to_string(names) << ")";
      if (!c.den.is_constant() || c.den.constant_value() != 1) os << "/(" << c.den.to_string(names) << ")";
      if (k > 0) os << "*";
    }
    if (k > 0) os << "T";
    if (k > 1) os << "^" << k;
  }
  return first ? "0" : os.str();
}

bool verify_witness(const Tower& tower, const AnnihilatorWitness& w, const TowerElem& t) {
  if (w.coeffs.size() < 2 || w.coeffs.back().num.is_zero()) return false;
  ClearedEvaluator ev(tower, w.gens);
  // Multiply through by the distinct denominators.
  std::vector<MPoly> dens;
  for (const auto& c : w.coeffs) {
    if (c.num.is_zero()) continue;
    if (std::find(dens.begin(), dens.end(), c.den) == dens.end()) {
      if (ev.vanishes(c.den)) return false;
      dens.push_back(c.den);
    }
  }
  std::vector<MPoly> nums;
  for (const auto& c : w.coeffs) {
    MPoly n = c.num;
    if (!n.is_zero()) {
      for (const auto& d : dens) {
        if (!(d == c.den)) n = n * d;
      }
    }
    nums.push_back(std::move(n));
  }
  if (ev.vanishes(nums.back())) return false;
  return ev.annihilates(nums, t);
}

std::optional<AnnihilatorWitness> annihilator(const Tower& tower, const TowerElem& t,
                                              const std::vector<TowerElem>& gens,
                                              const BasisBudget& budget) {
  if (gens.empty()) throw PreconditionError("annihilator needs at least one generator");
  const std::size_t n = gens.size();
  if (auto q = tower.is_rational(t)) return linear_witness(gens, MPoly::constant(n, -*q));
  for (std::size_t j = 0; j < n; ++j) {
    if (tower.eq(t, gens[j])) return linear_witness(gens, -MPoly::variable(n, j));
  }
  if (budget.strategy != AnnihilatorStrategy::blind) {
    auto e = by_elimination(tower, t, gens, budget, false);
    if (!e.witness && e.had_candidates) e = by_elimination(tower, t, gens, budget, true);
    if (e.witness) return e.witness;
    if (budget.strategy == AnnihilatorStrategy::elimination) return std::nullopt;
  }
  return by_blind(tower, t, gens, budget);
}

BasisEnumeration BasisEnumeration::intrinsic(const Tower& tower) {
  return {"z", tower.depth(), [&tower](std::size_t i) { return z_element(tower, i); }};
}

BasisEnumeration BasisEnumeration::generators(const Tower& tower) {
  return {"x", tower.depth(), [&tower](std::size_t i) { return tower.gen_x(i); }};
}

MembershipResult member_basis_report(const Tower& tower, const TowerElem& t,
                                     const BasisEnumeration& basis, const BasisBudget& budget) {
  if (needed_levels(tower, t) > tower.depth()) throw PreconditionError("element beyond the tower");
  if (basis.length == 0) throw PreconditionError("empty basis enumeration");
  std::vector<TowerElem> prefix;
  const std::size_t limit = std::min(budget.max_prefix, basis.length);
  for (std::size_t n = 1; n <= limit; ++n) {
    prefix.push_back(basis.at(n - 1));
    if (auto w = annihilator(tower, t, prefix, budget)) {
      MembershipResult r;
      r.n = n - 1;
      if (!tower.is_rational(t)) {
        r.member = std::any_of(prefix.begin(), prefix.end(),
                               [&](const TowerElem& a) { return tower.eq(a, t); });
      }
      r.witness = std::move(w);
      return r;
    }
  }
  throw BudgetExhausted("no annihilator over the first " + std::to_string(limit) + " elements of " +
                        basis.name);
}

bool member_basis(const Tower& tower, const TowerElem& t, const BasisEnumeration& basis,
                  const BasisBudget& budget) {
  return member_basis_report(tower, t, basis, budget).member;
}

TowerElem intrinsic_basis(const Tower& tower, std::size_t i) { return z_element(tower, i); }

std::pair<AnnihilatorWitness, AnnihilatorWitness> interdependence_check(const Tower& tower,
                                                                        std::size_t i) {
  if (i >= tower.depth()) throw PreconditionError("level beyond the tower");
  const TowerElem z = z_element(tower, i), x = tower.gen_x(i);
  auto zx = annihilator(tower, z, {x});
  auto xz = annihilator(tower, x, {z});
  if (!zx || !xz) throw InvariantViolation("elimination failed between z and x at level " + std::to_string(i));
  return {std::move(*zx), std::move(*xz)};
}

}  // namespace fermat
