#include "fermat/mpoly.hpp"

#include <mutex>
#include <sstream>
#include <utility>

#include "fermat/error.hpp"
#include "fermat/modp.hpp"

namespace fermat {

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t v) {
  MPoly p(nvars);
  Monomial m(nvars, 0);
  m[v] = 1;
  p.add_term(m, Rational(1));
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.begin()->first) {
    if (e) return false;
  }
  return true;
}

Rational MPoly::constant_value() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

long MPoly::degree_in(std::size_t v) const {
  if (terms_.empty()) return -1;
  long d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m[v]));
  return d;
}

long MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  long d = 0;
  for (const auto& [m, c] : terms_) {
    long s = 0;
    for (auto e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::vector<MPoly> MPoly::coeffs_in(std::size_t v) const {
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(0L, degree_in(v) + 1)), MPoly(nvars_));
  for (const auto& [m, c] : terms_) {
    Monomial r = m;
    r[v] = 0;
    out[m[v]].add_term(r, c);
  }
  return out;
}

MPoly MPoly::from_coeffs_in(std::size_t v, const std::vector<MPoly>& cs) {
  MPoly out(cs.empty() ? 0 : cs[0].nvars());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [m, c] : cs[k].terms()) {
      Monomial r = m;
      r[v] += static_cast<std::uint32_t>(k);
      out.add_term(r, c);
    }
  }
  return out;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly out = a;
  out.nvars_ = std::max(a.nvars_, b.nvars_);
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly out = a;
  out.nvars_ = std::max(a.nvars_, b.nvars_);
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out(std::max(a.nvars_, b.nvars_));
  if (a.is_zero() || b.is_zero()) return out;
  Monomial m(out.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t v = 0; v < m.size(); ++v) m[v] = ma[v] + mb[v];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

MPoly MPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return MPoly(nvars_);
  MPoly out = *this;
  for (auto& [m, k] : out.terms_) k *= c;
  return out;
}

MPoly MPoly::pow(std::uint64_t n) const {
  MPoly result = constant(nvars_, Rational(1));
  MPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::substitute(std::size_t v, const MPoly& q) const {
  const auto cs = coeffs_in(v);
  MPoly acc(nvars_);
  for (std::size_t k = cs.size(); k-- > 0;) acc = acc * q + cs[k];
  return acc;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool unit_mono = true;
    for (auto e : m) unit_mono = unit_mono && e == 0;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (a != 1 || unit_mono) {
      os << a.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (!m[v]) continue;
      if (wrote) os << '*';
      os << names[v];
      if (m[v] > 1) os << '^' << m[v];
      wrote = true;
    }
  }
  return os.str();
}

bool try_exact_div(const MPoly& a, const MPoly& b, MPoly& q) {
  if (b.is_zero()) throw DivisionByZero("multivariate division by zero");
  const std::size_t nv = std::max(a.nvars(), b.nvars());
  q = MPoly(nv);
  MPoly r = a;
  const auto& [lb, cb] = b.leading();
  Monomial m(nv);
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    for (std::size_t v = 0; v < nv; ++v) {
      if (lr[v] < lb[v]) return false;
      m[v] = lr[v] - lb[v];
    }
    MPoly t(nv);
    t.add_term(m, cr / cb);
    q = q + t;
    r = r - t * b;
  }
  return true;
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!try_exact_div(a, b, q)) throw InvariantViolation("inexact multivariate division");
  return q;
}

namespace {

// sum_j cs[j] (-c0)^j c1^(n-j)
MPoly eval_at_root(const std::vector<MPoly>& cs, const MPoly& c0, const MPoly& c1) {
  const std::size_t n = cs.size() - 1;
  const MPoly root = -c0;
  std::vector<MPoly> c1pow(n + 1, MPoly::constant(c0.nvars(), Rational(1)));
  for (std::size_t k = 1; k <= n; ++k) c1pow[k] = c1pow[k - 1] * c1;
  MPoly acc(c0.nvars());
  MPoly rp = MPoly::constant(c0.nvars(), Rational(1));
  for (std::size_t j = 0; j <= n; ++j) {
    if (!cs[j].is_zero()) acc = acc + cs[j] * rp * c1pow[n - j];
    if (j < n) rp = rp * root;
  }
  return acc;
}

}  // namespace

namespace {

MPoly resultant_bareiss(const MPoly& a, const MPoly& b, std::size_t v) {
  const std::size_t nv = std::max(a.nvars(), b.nvars());
  const auto ca = a.coeffs_in(v), cb = b.coeffs_in(v);
  if (ca.size() < 2 || cb.size() < 2) {
    throw PreconditionError("resultant needs positive degree in the eliminated variable");
  }
  const std::size_t m = ca.size() - 1, n = cb.size() - 1;
  if (m == 1) return eval_at_root(cb, ca[0], ca[1]);
  if (n == 1) {
    MPoly r = eval_at_root(ca, cb[0], cb[1]);
    return (m % 2) ? -r : r;
  }
  const std::size_t size = m + n;
  std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size, MPoly(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = ca[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = cb[n - j];

  bool negate = false;
  MPoly prev = MPoly::constant(nv, Rational(1));
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < size && s[piv][k].is_zero()) ++piv;
      if (piv == size) return MPoly(nv);
      std::swap(s[k], s[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        MPoly t = s[i][j] * s[k][k] - s[i][k] * s[k][j];
        s[i][j] = exact_div(t, prev);
      }
      s[i][k] = MPoly(nv);
    }
    prev = s[k][k];
  }
  MPoly det = s[size - 1][size - 1];
  return negate ? -det : det;
}

constexpr double kMaxInterpolationPoints = 250'000;

std::uint64_t mod_resultant(const ModP& f, ModPoly a, ModPoly b) {
  std::uint64_t acc = 1;
  while (true) {
    const std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return f.mul(acc, f.pow(b[0], da));
    if (da == 0) return f.mul(acc, f.pow(a[0], db));
    const std::uint64_t inv_lead = f.inv(b.back());
    for (std::size_t i = a.size(); i-- > db;) {
      const std::uint64_t q = f.mul(a[i], inv_lead);
      if (q == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = f.sub(a[i - db + j], f.mul(q, b[j]));
    }
    a.resize(db);
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) return 0;
    if ((da * db) % 2 == 1) acc = f.sub(0, acc);
    acc = f.mul(acc, f.pow(b.back(), da - (a.size() - 1)));
    std::swap(a, b);
  }
}

// Primes below 2^31, descending.
std::uint64_t word_prime(std::size_t i) {
  static std::vector<std::uint64_t> primes;
  static std::mutex mu;
  std::lock_guard lock(mu);
  while (primes.size() <= i) {
    mpz_class c(static_cast<unsigned long>(primes.empty() ? (std::uint64_t{1} << 31) + 1 : primes.back()));
    do {
      c -= 2;
    } while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0);
    primes.push_back(c.get_ui());
  }
  return primes[i];
}

struct BadPrime {};

// Integer image of p after multiplying by `scale`, restricted to `vars`.
struct IntTerms {
  std::vector<std::vector<std::uint32_t>> e;
  std::vector<mpz_class> c;
};

IntTerms integer_terms(const MPoly& p, const std::vector<std::size_t>& vars, mpz_class& scale) {
  scale = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
  }
  IntTerms out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e;
    for (auto v : vars) e.push_back(m[v]);
    out.e.push_back(std::move(e));
    out.c.push_back(c.get_num() * (scale / c.get_den()));
  }
  return out;
}

// How the terms of a polynomial collapse as the free variables are set one
// at a time: at step k, term i of the current list adds c * x^exp[k][i] to
// term parent[k][i] of the next list. The last list is indexed by the degree
// in the eliminated variable.
struct Collapse {
  std::vector<std::vector<std::uint32_t>> parent, exp;
  std::vector<std::vector<char>> lead;  // term has the top degree in v
  std::uint32_t degree = 0;

  Collapse(std::vector<std::vector<std::uint32_t>> terms, std::size_t nfree) {
    for (const auto& e : terms) degree = std::max(degree, e[nfree]);
    for (std::size_t k = 0; k < nfree; ++k) {
      std::map<std::vector<std::uint32_t>, std::uint32_t> keys;
      std::vector<std::uint32_t> par, ex;
      std::vector<char> ld;
      for (const auto& e : terms) ld.push_back(e[nfree] == degree);
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& e : terms) {
        auto r = e;
        ex.push_back(r[k]);
        r[k] = 0;
        auto [it, fresh] = keys.try_emplace(r, static_cast<std::uint32_t>(next.size()));
        if (fresh) next.push_back(r);
        par.push_back(it->second);
      }
      parent.push_back(std::move(par));
      exp.push_back(std::move(ex));
      lead.push_back(std::move(ld));
      terms = std::move(next);
    }
    std::vector<std::uint32_t> par;
    for (const auto& e : terms) par.push_back(e[nfree]);
    parent.push_back(std::move(par));
  }

  std::vector<std::uint64_t> step(std::size_t k, const std::vector<std::uint64_t>& c,
                                  const std::vector<std::uint64_t>& xpow, std::size_t out_size,
                                  const ModP& f) const {
    std::vector<std::uint64_t> out(out_size, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i]) out[parent[k][i]] = f.add(out[parent[k][i]], f.mul(c[i], xpow[exp[k][i]]));
    }
    return out;
  }

  std::size_t size(std::size_t k) const {
    return k < parent.size() - 1 ? exp[k].size() : parent.back().size();
  }

  bool lead_survives(std::size_t k, const std::vector<std::uint64_t>& c) const {
    if (k == exp.size()) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] && parent.back()[i] == degree) return true;
      }
      return false;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] && lead[k][i]) return true;
    }
    return false;
  }

  ModPoly dense(const std::vector<std::uint64_t>& c, const ModP& f) const {
    ModPoly out(degree + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) out[parent.back()[i]] = f.add(out[parent.back()[i]], c[i]);
    return out;
  }
};

// Dense image of res_v(a, b) over F_ell in the free variables k .. nfree-1,
// laid out with the last free variable fastest.
std::vector<std::uint64_t> dense_resultant(const Collapse& ca, const std::vector<std::uint64_t>& a,
                                           const Collapse& cb, const std::vector<std::uint64_t>& b,
                                           std::size_t k, const std::vector<long>& bounds,
                                           const ModP& f) {
  if (k == bounds.size()) return {mod_resultant(f, ca.dense(a, f), cb.dense(b, f))};
  const std::size_t npts = static_cast<std::size_t>(bounds[k]) + 1;
  std::uint32_t maxe = 0;
  for (auto e : ca.exp[k]) maxe = std::max(maxe, e);
  for (auto e : cb.exp[k]) maxe = std::max(maxe, e);
  std::vector<std::uint64_t> xs, xpow(maxe + 1);
  std::vector<std::vector<std::uint64_t>> vals;
  for (std::uint64_t x = 0; xs.size() < npts; ++x) {
    if (x > npts + 64) throw BadPrime{};
    xpow[0] = 1;
    for (std::size_t e = 1; e <= maxe; ++e) xpow[e] = f.mul(xpow[e - 1], x);
    auto sa = ca.step(k, a, xpow, ca.size(k + 1), f), sb = cb.step(k, b, xpow, cb.size(k + 1), f);
    if (!ca.lead_survives(k + 1, sa) || !cb.lead_survives(k + 1, sb)) continue;
    xs.push_back(x);
    vals.push_back(dense_resultant(ca, sa, cb, sb, k + 1, bounds, f));
  }
  // Newton interpolation per inner coordinate, then expansion to monomials.
  const std::size_t inner = vals[0].size();
  std::vector<std::uint64_t> out(npts * inner, 0);
  std::vector<std::uint64_t> dd(npts), poly(npts);
  std::vector<std::uint64_t> inv_gap(npts * npts, 0);
  for (std::size_t i = 0; i < npts; ++i) {
    for (std::size_t k = 0; k < i; ++k) inv_gap[i * npts + k] = f.inv(f.sub(xs[i], xs[k]));
  }
  for (std::size_t idx = 0; idx < inner; ++idx) {
    for (std::size_t i = 0; i < npts; ++i) dd[i] = vals[i][idx];
    for (std::size_t j = 1; j < npts; ++j) {
      for (std::size_t i = npts - 1; i >= j; --i) {
        dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), inv_gap[i * npts + (i - j)]);
      }
    }
    std::fill(poly.begin(), poly.end(), 0);
    for (std::size_t k = npts; k-- > 0;) {
      // poly = poly * (u - xs[k]) + dd[k]
      for (std::size_t d = npts - 1; d > 0; --d) poly[d] = f.sub(poly[d - 1], f.mul(poly[d], xs[k]));
      poly[0] = f.sub(dd[k], f.mul(poly[0], xs[k]));
    }
    for (std::size_t d = 0; d < npts; ++d) out[d * inner + idx] = poly[d];
  }
  return out;
}

double log2_norm1(const IntTerms& p) {
  mpz_class s = 0;
  for (const auto& c : p.c) s += abs(c);
  return static_cast<double>(mpz_sizeinbase(s.get_mpz_t(), 2));
}

// Evaluation/interpolation over word-size primes and Chinese remaindering.
// The coefficients of res_v(a, b) for integer a, b are bounded by
// |a|_1^n |b|_1^m, which fixes the number of primes. With `early`, two
// consecutive primes that leave every coefficient unchanged end the loop.
MPoly resultant_modular(const MPoly& a, const MPoly& b, std::size_t v,
                        const std::vector<std::size_t>& free, const std::vector<long>& bounds,
                        bool early) {
  std::vector<std::size_t> vars = free;
  vars.push_back(v);
  const std::size_t vpos = free.size();
  mpz_class sa, sb;
  const IntTerms ia = integer_terms(a, vars, sa), ib = integer_terms(b, vars, sb);
  const auto m = static_cast<std::uint32_t>(a.degree_in(v)), n = static_cast<std::uint32_t>(b.degree_in(v));
  const Collapse col_a(ia.e, vpos), col_b(ib.e, vpos);
  const double bits = n * log2_norm1(ia) + m * log2_norm1(ib) + 2;

  std::size_t box = 1;
  for (long d : bounds) box *= static_cast<std::size_t>(d) + 1;
  std::vector<mpz_class> value(box, 0);
  mpz_class modulus = 1;
  int stable = 0;
  for (std::size_t idx = 0; stable < 2 && static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) <= bits; ++idx) {
    const ModP f{word_prime(idx)};
    std::vector<std::uint64_t> image;
    try {
      std::vector<std::uint64_t> ma, mb;
      for (const auto& c : ia.c) ma.push_back(mpz_fdiv_ui(c.get_mpz_t(), f.ell));
      for (const auto& c : ib.c) mb.push_back(mpz_fdiv_ui(c.get_mpz_t(), f.ell));
      if (!col_a.lead_survives(0, ma) || !col_b.lead_survives(0, mb)) continue;
      image = dense_resultant(col_a, ma, col_b, mb, 0, bounds, f);
    } catch (const BadPrime&) {
      continue;
    }
    const std::uint64_t inv_mod = f.inv(mpz_fdiv_ui(modulus.get_mpz_t(), f.ell));
    const mpz_class half = modulus / 2;
    bool changed = false;
    for (std::size_t i = 0; i < box; ++i) {
      // symmetric residues, so small negative coefficients settle too
      mpz_class cur_value = value[i] > half ? mpz_class(value[i] - modulus) : value[i];
      const std::uint64_t cur = mpz_fdiv_ui(cur_value.get_mpz_t(), f.ell);
      if (cur != image[i]) changed = true;
      const std::uint64_t k = f.mul(f.sub(image[i], mpz_fdiv_ui(value[i].get_mpz_t(), f.ell)), inv_mod);
      if (k) value[i] += modulus * mpz_class(static_cast<unsigned long>(k));
    }
    stable = (early && !changed) ? stable + 1 : 0;
    modulus *= mpz_class(static_cast<unsigned long>(f.ell));
  }
  const mpz_class half = modulus / 2;
  mpz_class pa, pb;
  mpz_pow_ui(pa.get_mpz_t(), sa.get_mpz_t(), n);
  mpz_pow_ui(pb.get_mpz_t(), sb.get_mpz_t(), m);
  const mpz_class scale = pa * pb;
  MPoly out(a.nvars());
  Monomial mono(a.nvars(), 0);
  for (std::size_t i = 0; i < box; ++i) {
    if (value[i] == 0) continue;
    mpz_class c = value[i];
    if (c > half) c -= modulus;
    std::size_t rest = i;
    for (std::size_t k = free.size(); k-- > 0;) {
      const auto w = static_cast<std::size_t>(bounds[k]) + 1;
      mono[free[k]] = static_cast<std::uint32_t>(rest % w);
      rest /= w;
    }
    Rational q(c, scale);
    q.canonicalize();
    out.add_term(mono, q);
  }
  return out;
}

MPoly resultant_impl(const MPoly& a, const MPoly& b, std::size_t v, bool early) {
  const long m = a.degree_in(v), n = b.degree_in(v);
  if (m == 1 || n == 1) return resultant_bareiss(a, b, v);
  std::vector<std::size_t> free;
  std::vector<long> bounds;
  double points = 1;
  for (std::size_t u = 0; u < a.nvars(); ++u) {
    if (u == v || (!a.involves(u) && !b.involves(u))) continue;
    const long bound = n * std::max(a.degree_in(u), 0L) + m * std::max(b.degree_in(u), 0L);
    points *= static_cast<double>(bound + 1);
    free.push_back(u);
    bounds.push_back(bound);
  }
  if (points > kMaxInterpolationPoints) return resultant_bareiss(a, b, v);
  return resultant_modular(a, b, v, free, bounds, early);
}

}  // namespace

MPoly resultant(const MPoly& a, const MPoly& b, std::size_t v) {
  if (a.degree_in(v) < 1 || b.degree_in(v) < 1) {
    throw PreconditionError("resultant needs positive degree in the eliminated variable");
  }
  return resultant_impl(a, b, v, false);
}

MPoly probable_resultant(const MPoly& a, const MPoly& b, std::size_t v) {
  if (a.degree_in(v) < 1 || b.degree_in(v) < 1) {
    throw PreconditionError("resultant needs positive degree in the eliminated variable");
  }
  return resultant_impl(a, b, v, true);
}

MFrac MFrac::from(const MPoly& p) { return {p, MPoly::constant(p.nvars(), Rational(1))}; }

MFrac operator+(const MFrac& a, const MFrac& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

MFrac operator-(const MFrac& a, const MFrac& b) { return a + (-b); }

MFrac operator*(const MFrac& a, const MFrac& b) { return {a.num * b.num, a.den * b.den}; }

MFrac MFrac::inverse() const {
  if (num.is_zero()) throw DivisionByZero("inverse of a zero fraction");
  return {den, num};
}

}  // namespace fermat
