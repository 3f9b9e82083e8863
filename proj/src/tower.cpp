#include "fermat/tower.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <sstream>

namespace fermat {

struct TowerElem::Rep {
  Rational q;
  YPoly ys;
  std::size_t hash = 0;
  mutable std::atomic_flag memo_lock;
  mutable ImageMemo memo;
};

namespace {

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_integer(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  }
  return h;
}

std::size_t hash_poly(const Polynomial<TowerElem>& p) {
  std::size_t h = p.coeffs.size();
  for (const auto& c : p.coeffs) hash_combine(h, c.hash());
  return h;
}


}  // namespace

TowerElem::TowerElem() : TowerElem(Rational(0)) {}

TowerElem::TowerElem(Rational q) : level_(0) {
  auto rep = std::make_shared<Rep>();
  rep->hash = hash_integer(q.get_num());
  hash_combine(rep->hash, hash_integer(q.get_den()));
  rep->q = std::move(q);
  rep_ = std::move(rep);
}

TowerElem::TowerElem(std::size_t level, std::shared_ptr<const Rep> rep)
    : level_(level), rep_(std::move(rep)) {}

TowerElem TowerElem::from_ypoly(std::size_t level, YPoly ys) {
  auto rep = std::make_shared<Rep>();
  std::size_t h = 0x51ed27 + level;
  for (const auto& c : ys.coeffs) {
    hash_combine(h, hash_poly(c.num));
    hash_combine(h, hash_poly(c.den));
  }
  rep->hash = h;
  rep->ys = std::move(ys);
  return TowerElem(level, std::move(rep));
}

bool TowerElem::is_zero() const {
  return level_ == 0 ? sgn(rep_->q) == 0 : rep_->ys.is_zero();
}

const Rational& TowerElem::rational() const { return rep_->q; }
const YPoly& TowerElem::ys() const { return rep_->ys; }
std::size_t TowerElem::hash() const { return rep_->hash; }

TowerElem::ImageMemo TowerElem::memo() const {
  while (rep_->memo_lock.test_and_set(std::memory_order_acquire)) {
  }
  const ImageMemo m = rep_->memo;
  rep_->memo_lock.clear(std::memory_order_release);
  return m;
}

void TowerElem::set_memo(const ImageMemo& m) const {
  while (rep_->memo_lock.test_and_set(std::memory_order_acquire)) {
  }
  rep_->memo = m;
  rep_->memo_lock.clear(std::memory_order_release);
}

bool operator==(const TowerElem& a, const TowerElem& b) {
  if (a.level_ != b.level_) return false;
  if (a.rep_ == b.rep_) return true;
  if (a.rep_->hash != b.rep_->hash) return false;
  if (a.level_ == 0) return a.rep_->q == b.rep_->q;
  const YPoly& p = a.rep_->ys;
  const YPoly& q = b.rep_->ys;
  if (p.coeffs.size() != q.coeffs.size()) return false;
  auto same = [](const Polynomial<TowerElem>& u, const Polynomial<TowerElem>& v) {
    return u.coeffs == v.coeffs;
  };
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (!same(p.coeffs[i].num, q.coeffs[i].num) || !same(p.coeffs[i].den, q.coeffs[i].den)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// LevelField

TowerElem LevelField::zero() const { return tower->zero(level); }
TowerElem LevelField::one() const { return tower->one(level); }
TowerElem LevelField::add(const TowerElem& a, const TowerElem& b) const {
  return tower->add_at(level, a, b);
}
TowerElem LevelField::sub(const TowerElem& a, const TowerElem& b) const {
  return tower->sub_at(level, a, b);
}
TowerElem LevelField::mul(const TowerElem& a, const TowerElem& b) const {
  return tower->mul_at(level, a, b);
}
TowerElem LevelField::neg(const TowerElem& a) const { return tower->neg_at(level, a); }
TowerElem LevelField::inv(const TowerElem& a) const { return tower->inv_at(level, a); }
bool LevelField::certify_coprime(const Polynomial<TowerElem>& a,
                                 const Polynomial<TowerElem>& b) const {
  return tower->certify_coprime(a, b);
}

// ---------------------------------------------------------------------------
// Tower construction

Tower::Tower(TowerConfig config) : config_(std::move(config)) {
  static std::atomic<std::uint64_t> next_id{1};
  id_ = next_id.fetch_add(1);
  const auto& ps = config_.primes;
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::uint64_t p = ps[i];
    if (p % 2 == 0 || !is_prime(Nat(static_cast<unsigned long>(p)))) {
      throw ConfigError("tower exponent " + std::to_string(p) + " is not an odd prime");
    }
    if (!seen.insert(p).second) {
      throw ConfigError("tower exponent " + std::to_string(p) + " is repeated");
    }
    if (!config_.unchecked) {
      if (p == 3) throw ConfigError("exponent 3 gives genus 1; pass the unchecked flag to allow it");
      if (Nat(static_cast<unsigned long>(p)) != prime_schedule(i)) {
        throw ConfigError("exponent " + std::to_string(p) + " at position " + std::to_string(i) +
                          " is not the schedule prime " + prime_schedule(i).get_str() +
                          "; pass the unchecked flag for other primes");
      }
    }
  }

  // A prime ell with gcd(p_i, ell - 1) = 1 for every level, so each
  // 1 - c^p has a unique p-th root in F_ell.
  std::uint64_t ell = 4611686018427387847ULL;
  auto fits = [&](std::uint64_t cand) {
    if (!is_prime(Nat(static_cast<unsigned long>(cand)))) return false;
    return std::all_of(ps.begin(), ps.end(), [&](std::uint64_t p) { return (cand - 1) % p != 0; });
  };
  while (!fits(ell)) ell -= 2;
  modp_ = ModP{ell};
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Nat pinv = [&] {
      Nat r;
      const Nat p(static_cast<unsigned long>(ps[i])), m(static_cast<unsigned long>(ell - 1));
      mpz_invert(r.get_mpz_t(), p.get_mpz_t(), m.get_mpz_t());
      return r;
    }();
    while (true) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const std::uint64_t c = (state >> 2) % ell;
      const std::uint64_t t = modp_.sub(1, modp_.pow(c, ps[i]));
      if (c < 2 || t == 0) continue;
      point_x_.push_back(c);
      point_y_.push_back(modp_.pow(t, pinv.get_ui()));
      break;
    }
  }

  zeros_.push_back(TowerElem(Rational(0)));
  ones_.push_back(TowerElem(Rational(1)));
  one_minus_xp_.emplace_back();
  u_factors_.emplace_back();
  modulus_.emplace_back();
  for (std::size_t level = 1; level <= depth(); ++level) {
    const CoeffField cf = coeff_field(level - 1);
    zeros_.push_back(TowerElem::from_ypoly(level, YPoly{}));
    ones_.push_back(TowerElem::from_ypoly(level, YPoly({cf.one()})));
    const LevelField& base = cf.base();
    const auto p = static_cast<std::size_t>(ps[level - 1]);
    Polynomial<TowerElem> xp = poly::monomial(base, base.one(), p);
    Polynomial<TowerElem> omxp = poly::sub(base, poly::one(base), xp);
    one_minus_xp_.push_back(cf.from_poly(omxp));
    // 1 - x^p = -(x - 1)(x^(p-1) + ... + 1)
    u_factors_.push_back({poly::sub(base, poly::monomial(base, base.one(), 1), poly::one(base)),
                          Polynomial<TowerElem>(std::vector<TowerElem>(p, base.one()))});
    // Y^p + (x^p - 1)
    std::vector<Coeff> m(p + 1, cf.zero());
    m[0] = cf.from_poly(poly::neg(base, omxp));
    m[p] = cf.one();
    modulus_.push_back(YPoly(std::move(m)));
    gen_x_.push_back(TowerElem::from_ypoly(level, YPoly({cf.variable()})));
    gen_y_.push_back(TowerElem::from_ypoly(level, YPoly({cf.zero(), cf.one()})));
  }
}

std::uint64_t Tower::prime(std::size_t i) const {
  if (i >= depth()) throw PreconditionError("level index " + std::to_string(i) + " out of range");
  return config_.primes[i];
}

void Tower::check_level(std::size_t level) const {
  if (level > depth()) {
    throw PreconditionError("level " + std::to_string(level) + " exceeds tower depth " +
                            std::to_string(depth()));
  }
}

TowerElem Tower::zero(std::size_t level) const {
  check_level(level);
  return zeros_[level];
}

TowerElem Tower::one(std::size_t level) const {
  check_level(level);
  return ones_[level];
}

TowerElem Tower::gen_x(std::size_t i) const {
  if (i >= depth()) throw PreconditionError("generator index " + std::to_string(i) + " out of range");
  return gen_x_[i];
}

TowerElem Tower::gen_y(std::size_t i) const {
  if (i >= depth()) throw PreconditionError("generator index " + std::to_string(i) + " out of range");
  return gen_y_[i];
}

// ---------------------------------------------------------------------------
// Same-level arithmetic

TowerElem Tower::add_at(std::size_t level, const TowerElem& a, const TowerElem& b) const {
  if (level == 0) return TowerElem(a.rational() + b.rational());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const CoeffField cf = coeff_field(level - 1);
  return TowerElem::from_ypoly(level, poly::add(cf, a.ys(), b.ys()));
}

TowerElem Tower::sub_at(std::size_t level, const TowerElem& a, const TowerElem& b) const {
  if (level == 0) return TowerElem(a.rational() - b.rational());
  if (b.is_zero()) return a;
  const CoeffField cf = coeff_field(level - 1);
  return TowerElem::from_ypoly(level, poly::sub(cf, a.ys(), b.ys()));
}

TowerElem Tower::neg_at(std::size_t level, const TowerElem& a) const {
  if (level == 0) return TowerElem(-a.rational());
  if (a.is_zero()) return a;
  const CoeffField cf = coeff_field(level - 1);
  return TowerElem::from_ypoly(level, poly::neg(cf, a.ys()));
}

YPoly Tower::reduce(std::size_t level, YPoly p) const {
  const auto prime = static_cast<std::size_t>(config_.primes[level - 1]);
  if (p.coeffs.size() <= prime) return p;
  const CoeffField cf = coeff_field(level - 1);
  // y^(p+k) = (1 - x^p) y^k
  for (std::size_t k = p.coeffs.size(); k-- > prime;) {
    if (cf.is_zero(p.coeffs[k])) continue;
    p.coeffs[k - prime] = cf.add(p.coeffs[k - prime], cf.mul(p.coeffs[k], one_minus_xp_[level]));
  }
  p.coeffs.resize(prime);
  poly::trim(cf, p);
  return p;
}

TowerElem Tower::mul_at(std::size_t level, const TowerElem& a, const TowerElem& b) const {
  if (level == 0) return TowerElem(a.rational() * b.rational());
  if (a.is_zero() || b.is_zero()) return zeros_[level];
  if (a == ones_[level]) return b;
  if (b == ones_[level]) return a;
  const CoeffField cf = coeff_field(level - 1);
  if (level == 1) return TowerElem::from_ypoly(level, reduce(level, poly::mul(cf, a.ys(), b.ys())));
  const LevelField& k = cf.base();
  using XPoly = Polynomial<TowerElem>;
  // Above level 1, gcds over the coefficient field are expensive: multiply
  // over a common denominator so each coordinate is reduced once.
  std::vector<XPoly> factors;
  auto clear = [&](const YPoly& y, XPoly& den) {
    den = poly::one(k);
    for (const auto& c : y.coeffs) {
      if (c.den.degree() <= 0) continue;
      den = cf.lcm(den, c.den);
      if (std::none_of(factors.begin(), factors.end(),
                       [&](const XPoly& f) { return poly::equal(k, f, c.den); })) {
        factors.push_back(c.den);
      }
    }
    std::vector<XPoly> out(y.coeffs.size());
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) {
      const Coeff& c = y.coeffs[j];
      if (c.num.is_zero()) continue;
      out[j] = c.den.degree() <= 0 ? poly::mul(k, c.num, den)
                                    : poly::mul(k, c.num, poly::exact_quotient(k, den, c.den));
    }
    return out;
  };
  XPoly da, db;
  const std::vector<XPoly> ca = clear(a.ys(), da), cb = clear(b.ys(), db);
  std::vector<XPoly> prod(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].is_zero()) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (!cb[j].is_zero()) prod[i + j] = poly::add(k, prod[i + j], poly::mul(k, ca[i], cb[j]));
    }
  }
  // y^(p+k) = (1 - x^p) y^k
  const auto p = static_cast<std::size_t>(config_.primes[level - 1]);
  const XPoly& u = one_minus_xp_[level].num;
  for (std::size_t j = prod.size(); j-- > p;) {
    if (!prod[j].is_zero()) prod[j - p] = poly::add(k, prod[j - p], poly::mul(k, prod[j], u));
  }
  if (prod.size() > p) prod.resize(p);
  const XPoly den = poly::mul(k, da, db);
  std::vector<Coeff> out;
  out.reserve(prod.size());
  for (auto& e : prod) out.push_back(cf.normalize_with(std::move(e), den, factors));
  YPoly r(std::move(out));
  poly::trim(cf, r);
  return TowerElem::from_ypoly(level, std::move(r));
}

TowerElem Tower::inv_at(std::size_t level, const TowerElem& a) const {
  if (level == 0) {
    if (sgn(a.rational()) == 0) throw DivisionByZero("inverse of zero");
    return TowerElem(1 / a.rational());
  }
  if (a.is_zero()) throw DivisionByZero("inverse of zero");
  const CoeffField cf = coeff_field(level - 1);
  const YPoly& ys = a.ys();
  // a = y^t * b with b(0) != 0, and y^-t = y^(p-t) / (1 - x^p).
  std::size_t t = 0;
  while (cf.is_zero(ys.coeffs[t])) ++t;
  YPoly b(std::vector<Coeff>(ys.coeffs.begin() + static_cast<long>(t), ys.coeffs.end()));
  YPoly inv_b = b.degree() == 0 ? YPoly({cf.inv(b.coeffs[0])})
                                : poly::inverse_mod_subresultant(cf, b, modulus_[level]);
  if (t == 0) return TowerElem::from_ypoly(level, std::move(inv_b));
  const LevelField& k = cf.base();
  const auto p = static_cast<std::size_t>(config_.primes[level - 1]);
  std::vector<Coeff> out(p, cf.zero());
  for (std::size_t j = 0; j < inv_b.coeffs.size(); ++j) {
    if (cf.is_zero(inv_b.coeffs[j])) continue;
    if (j >= t) {
      out[j - t] = inv_b.coeffs[j];
    } else {
      const Coeff& c = inv_b.coeffs[j];
      out[j + p - t] = cf.normalize_with(c.num, poly::mul(k, c.den, one_minus_xp_[level].num),
                                         u_factors_[level]);
    }
  }
  YPoly r(std::move(out));
  poly::trim(cf, r);
  return TowerElem::from_ypoly(level, std::move(r));
}

namespace {

struct ModFrac {
  std::uint64_t num;
  std::uint64_t den;
};

// Images are carried as fractions so only the caller pays for an inversion.
std::optional<ModFrac> mod_frac(std::uint64_t key, const ModP& f,
                                const std::vector<std::uint64_t>& px,
                                const std::vector<std::uint64_t>& py, const TowerElem& a);

std::optional<ModFrac> mod_frac_uncached(std::uint64_t key, const ModP& f,
                                         const std::vector<std::uint64_t>& px,
                                         const std::vector<std::uint64_t>& py,
                                         const TowerElem& a) {
  if (a.level() == 0) {
    const Rational& q = a.rational();
    const mpz_class m(static_cast<unsigned long>(f.ell));
    const mpz_class d = q.get_den() % m;
    if (d == 0) return std::nullopt;
    mpz_class n = q.get_num() % m;
    if (n < 0) n += m;
    return ModFrac{n.get_ui(), d.get_ui()};
  }
  const std::size_t g = a.level() - 1;
  auto eval_x = [&](const Polynomial<TowerElem>& p) -> std::optional<ModFrac> {
    ModFrac acc{0, 1};
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
      acc.num = f.mul(acc.num, px[g]);
      if (p.coeffs[k].is_zero()) continue;
      auto c = mod_frac(key, f, px, py, p.coeffs[k]);
      if (!c) return std::nullopt;
      acc = {f.add(f.mul(acc.num, c->den), f.mul(c->num, acc.den)), f.mul(acc.den, c->den)};
    }
    return acc;
  };
  ModFrac acc{0, 1};
  const YPoly& ys = a.ys();
  for (std::size_t j = ys.coeffs.size(); j-- > 0;) {
    acc.num = f.mul(acc.num, py[g]);
    const Coeff& c = ys.coeffs[j];
    if (c.num.is_zero()) continue;
    auto n = eval_x(c.num);
    if (!n) return std::nullopt;
    ModFrac term = *n;
    if (c.den.degree() > 0) {
      auto d = eval_x(c.den);
      if (!d || d->num == 0) return std::nullopt;
      term = {f.mul(n->num, d->den), f.mul(n->den, d->num)};
    }
    acc = {f.add(f.mul(acc.num, term.den), f.mul(term.num, acc.den)), f.mul(acc.den, term.den)};
  }
  return acc;
}

std::optional<ModFrac> mod_frac(std::uint64_t key, const ModP& f,
                                const std::vector<std::uint64_t>& px,
                                const std::vector<std::uint64_t>& py, const TowerElem& a) {
  if (a.level() == 0 && mpz_size(a.rational().get_den_mpz_t()) <= 1 &&
      mpz_size(a.rational().get_num_mpz_t()) <= 1) {
    return mod_frac_uncached(key, f, px, py, a);
  }
  const TowerElem::ImageMemo m = a.memo();
  if (m.key == key) {
    if (m.den == 0) return std::nullopt;
    return ModFrac{m.num, m.den};
  }
  auto v = mod_frac_uncached(key, f, px, py, a);
  a.set_memo(v ? TowerElem::ImageMemo{key, v->num, v->den} : TowerElem::ImageMemo{key, 0, 0});
  return v;
}

}  // namespace

std::optional<std::uint64_t> Tower::mod_image(const TowerElem& a) const {
  auto v = mod_frac(id_, modp_, point_x_, point_y_, a);
  if (!v) return std::nullopt;
  return modp_.mul(v->num, modp_.inv(v->den));
}

bool Tower::certify_coprime(const Polynomial<TowerElem>& a, const Polynomial<TowerElem>& b) const {
  const ModP& f = modp_;
  // Scaling by the product of all denominators keeps the gcd degree.
  auto image = [&](const Polynomial<TowerElem>& p, ModPoly& out) {
    std::vector<ModFrac> fr;
    fr.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) {
      auto v = mod_frac(id_, f, point_x_, point_y_, c);
      if (!v) return false;
      fr.push_back(*v);
    }
    if (fr.empty() || fr.back().num == 0) return false;
    const std::size_t n = fr.size();
    out.assign(n, 0);
    std::vector<std::uint64_t> suffix(n + 1, 1);
    for (std::size_t i = n; i-- > 0;) suffix[i] = f.mul(suffix[i + 1], fr[i].den);
    std::uint64_t prefix = 1;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = f.mul(fr[i].num, f.mul(prefix, suffix[i + 1]));
      prefix = f.mul(prefix, fr[i].den);
    }
    return true;
  };
  ModPoly ia, ib;
  if (!image(a, ia) || !image(b, ib)) return false;
  return mod_gcd_degree(f, std::move(ia), std::move(ib)) == 0;
}

// ---------------------------------------------------------------------------
// Mixed-level arithmetic

TowerElem Tower::coerce(const TowerElem& a, std::size_t level) const {
  check_level(level);
  if (a.level() > level) {
    throw PreconditionError("cannot lower an element from level " + std::to_string(a.level()) +
                            " to level " + std::to_string(level));
  }
  TowerElem cur = a;
  while (cur.level() < level) {
    const std::size_t next = cur.level() + 1;
    if (cur.is_zero()) {
      cur = zeros_[next];
      continue;
    }
    const CoeffField cf = coeff_field(cur.level());
    cur = TowerElem::from_ypoly(next, YPoly({cf.from_base(cur)}));
  }
  return cur;
}

TowerElem Tower::add(const TowerElem& a, const TowerElem& b) const {
  const std::size_t l = std::max(a.level(), b.level());
  return add_at(l, coerce(a, l), coerce(b, l));
}

TowerElem Tower::sub(const TowerElem& a, const TowerElem& b) const {
  const std::size_t l = std::max(a.level(), b.level());
  return sub_at(l, coerce(a, l), coerce(b, l));
}

TowerElem Tower::mul(const TowerElem& a, const TowerElem& b) const {
  const std::size_t l = std::max(a.level(), b.level());
  return mul_at(l, coerce(a, l), coerce(b, l));
}

TowerElem Tower::neg(const TowerElem& a) const { return neg_at(a.level(), a); }

TowerElem Tower::inv(const TowerElem& a) const { return inv_at(a.level(), a); }

TowerElem Tower::div(const TowerElem& a, const TowerElem& b) const { return mul(a, inv(b)); }

TowerElem Tower::pow(const TowerElem& a, std::uint64_t n) const {
  TowerElem result = one(a.level());
  TowerElem base = a;
  while (n > 0) {
    if (n & 1U) result = mul(result, base);
    n >>= 1U;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

bool Tower::eq(const TowerElem& a, const TowerElem& b) const {
  const std::size_t l = std::max(a.level(), b.level());
  return coerce(a, l) == coerce(b, l);
}

std::optional<Rational> Tower::is_rational(const TowerElem& a) const {
  TowerElem cur = a;
  while (cur.level() > 0) {
    const YPoly& ys = cur.ys();
    if (ys.is_zero()) return Rational(0);
    if (ys.degree() > 0) return std::nullopt;
    const Coeff& c = ys.coeffs[0];
    if (c.num.degree() > 0 || c.den.degree() > 0) return std::nullopt;
    cur = c.num.coeffs[0];
  }
  return cur.rational();
}

TowerElem Tower::fermat_form(std::size_t i, const TowerElem& a, const TowerElem& b) const {
  const std::uint64_t p = prime(i);
  return sub(add(pow(a, p), pow(b, p)), one());
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct TowerAlgebra {
  using value_type = TowerElem;

  const Tower& tower;
  const GeneratorImages& images;

  TowerElem from_rational(const Rational& q) const { return tower.rational(q); }
  TowerElem add(const TowerElem& a, const TowerElem& b) const { return tower.add(a, b); }
  TowerElem mul(const TowerElem& a, const TowerElem& b) const { return tower.mul(a, b); }
  TowerElem inv(const TowerElem& a) const { return tower.inv(a); }
  bool is_zero(const TowerElem& a) const { return a.is_zero(); }
  TowerElem image_x(std::size_t i) const {
    auto it = images.x.find(i);
    if (it == images.x.end()) throw UnmappedGenerator("x" + std::to_string(i) + " has no image");
    return it->second;
  }
  TowerElem image_y(std::size_t i) const {
    auto it = images.y.find(i);
    if (it == images.y.end()) throw UnmappedGenerator("y" + std::to_string(i) + " has no image");
    return it->second;
  }
};

}  // namespace

TowerElem Tower::substitute(const TowerElem& a, const GeneratorImages& images) const {
  TowerAlgebra alg{*this, images};
  return evaluate(a, alg);
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

void serialize_into(std::ostringstream& os, const TowerElem& a);

void serialize_poly(std::ostringstream& os, const Polynomial<TowerElem>& p) {
  os << '[';
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (i) os << ',';
    serialize_into(os, p.coeffs[i]);
  }
  os << ']';
}

void serialize_into(std::ostringstream& os, const TowerElem& a) {
  if (a.level() == 0) {
    os << a.rational().get_str();
    return;
  }
  os << '[';
  const YPoly& ys = a.ys();
  for (std::size_t j = 0; j < ys.coeffs.size(); ++j) {
    if (j) os << ',';
    os << '(';
    serialize_poly(os, ys.coeffs[j].num);
    os << '/';
    serialize_poly(os, ys.coeffs[j].den);
    os << ')';
  }
  os << ']';
}

bool is_constant_elem(const TowerElem& a) {
  if (a.level() == 0) return true;
  const YPoly& ys = a.ys();
  if (ys.is_zero()) return true;
  if (ys.degree() > 0) return false;
  const Coeff& c = ys.coeffs[0];
  return c.num.degree() <= 0 && c.den.degree() == 0 &&
         (c.num.is_zero() || is_constant_elem(c.num.coeffs[0]));
}

std::string format_elem(const TowerElem& a);

// True when the formatted text is a single factor that needs no parentheses.
bool atomic(const std::string& s) {
  if (s.empty()) return true;
  std::size_t start = (s[0] == '-') ? 1 : 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-' || s[i] == '/' || s[i] == ' ') return false;
  }
  return true;
}

// Sum of coefficient * var^k terms, highest power first.
template <class Terms>
std::string format_sum(const Terms& terms, const std::string& var) {
  std::string out;
  for (std::size_t k = terms.size(); k-- > 0;) {
    std::string c = terms[k];
    if (c == "0") continue;
    std::string mono;
    if (k == 1) mono = var;
    if (k > 1) mono = var + "^" + std::to_string(k);
    std::string term;
    bool negative = false;
    if (mono.empty()) {
      term = c;
    } else if (c == "1") {
      term = mono;
    } else if (c == "-1") {
      term = mono;
      negative = true;
    } else if (atomic(c)) {
      if (c[0] == '-') {
        negative = true;
        c = c.substr(1);
      }
      term = c + "*" + mono;
    } else {
      term = "(" + c + ")*" + mono;
    }
    if (!negative && !term.empty() && term[0] == '-' && atomic(term)) {
      negative = true;
      term = term.substr(1);
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string format_xpoly(const Polynomial<TowerElem>& p, const std::string& var) {
  std::vector<std::string> terms;
  for (const auto& c : p.coeffs) terms.push_back(format_elem(c));
  return format_sum(terms, var);
}

std::string format_elem(const TowerElem& a) {
  if (a.level() == 0) return a.rational().get_str();
  const std::size_t g = a.level() - 1;
  const std::string xv = "x" + std::to_string(g), yv = "y" + std::to_string(g);
  const YPoly& ys = a.ys();
  std::vector<std::string> terms;
  for (const auto& c : ys.coeffs) {
    if (c.num.is_zero()) {
      terms.push_back("0");
      continue;
    }
    std::string num = format_xpoly(c.num, xv);
    if (c.den.degree() == 0) {
      terms.push_back(num);
      continue;
    }
    std::string den = format_xpoly(c.den, xv);
    if (!atomic(num)) num = "(" + num + ")";
    if (!atomic(den) || den.find('*') != std::string::npos) den = "(" + den + ")";
    terms.push_back(num + "/" + den);
  }
  return format_sum(terms, yv);
}

void collect_support(const TowerElem& a, std::set<std::size_t>& out) {
  if (a.level() == 0) return;
  const std::size_t g = a.level() - 1;
  const YPoly& ys = a.ys();
  for (const auto& c : ys.coeffs) {
    if (c.num.degree() > 0 || c.den.degree() > 0) out.insert(g);
    for (const auto& e : c.num.coeffs) collect_support(e, out);
    for (const auto& e : c.den.coeffs) collect_support(e, out);
  }
  if (ys.degree() > 0) out.insert(g);
}

}  // namespace

std::string Tower::serialize(const TowerElem& a) const {
  std::ostringstream os;
  os << 'L' << a.level() << ':';
  serialize_into(os, a);
  return os.str();
}

std::string Tower::format(const TowerElem& a) const {
  if (is_constant_elem(a)) {
    auto q = is_rational(a);
    return q->get_str();
  }
  return format_elem(a);
}

std::vector<std::size_t> Tower::support(const TowerElem& a) const {
  std::set<std::size_t> s;
  collect_support(a, s);
  return {s.begin(), s.end()};
}

}  // namespace fermat
