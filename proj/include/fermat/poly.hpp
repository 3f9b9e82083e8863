#pragma once

// Dense univariate polynomials and rational functions over an abstract
// coefficient field. The field is passed explicitly as a lightweight context
// object so that one kernel serves Q, Q(x) and every level of the tower.

#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "fermat/error.hpp"

namespace fermat {

template <class K>
concept CoefficientField = requires(const K& k, const typename K::value_type& a,
                                    const typename K::value_type& b) {
  { k.zero() } -> std::convertible_to<typename K::value_type>;
  { k.one() } -> std::convertible_to<typename K::value_type>;
  { k.add(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.sub(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.mul(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.neg(a) } -> std::convertible_to<typename K::value_type>;
  { k.inv(a) } -> std::convertible_to<typename K::value_type>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.equal(a, b) } -> std::convertible_to<bool>;
};

/// Coefficients in increasing degree. The zero polynomial is the empty vector
/// and the leading coefficient of any other polynomial is nonzero.
template <class E>
struct Polynomial {
  std::vector<E> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<E> c) : coeffs(std::move(c)) {}

  bool is_zero() const { return coeffs.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  const E& leading() const { return coeffs.back(); }
  const E& operator[](std::size_t i) const { return coeffs[i]; }
};

/// A reduced fraction num/den: den nonzero and monic, gcd(num, den) = 1,
/// zero is 0/1.
template <class E>
struct RatFunc {
  Polynomial<E> num;
  Polynomial<E> den;
};

namespace poly {

template <CoefficientField K>
using Poly = Polynomial<typename K::value_type>;

template <CoefficientField K>
void trim(const K& k, Poly<K>& p) {
  while (!p.coeffs.empty() && k.is_zero(p.coeffs.back())) p.coeffs.pop_back();
}

template <CoefficientField K>
Poly<K> constant(const K& k, typename K::value_type c) {
  Poly<K> p;
  if (!k.is_zero(c)) p.coeffs.push_back(std::move(c));
  return p;
}

template <CoefficientField K>
Poly<K> one(const K& k) {
  return Poly<K>({k.one()});
}

/// c * X^n
template <CoefficientField K>
Poly<K> monomial(const K& k, typename K::value_type c, std::size_t n) {
  if (k.is_zero(c)) return {};
  std::vector<typename K::value_type> v(n + 1, k.zero());
  v[n] = std::move(c);
  return Poly<K>(std::move(v));
}

template <CoefficientField K>
bool equal(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.coeffs.size() != b.coeffs.size()) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (!k.equal(a.coeffs[i], b.coeffs[i])) return false;
  }
  return true;
}

template <CoefficientField K>
bool is_one(const K& k, const Poly<K>& a) {
  return a.coeffs.size() == 1 && k.equal(a.coeffs[0], k.one());
}

template <CoefficientField K>
Poly<K> add(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  Poly<K> r;
  r.coeffs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.coeffs.size()) {
      r.coeffs.push_back(b.coeffs[i]);
    } else if (i >= b.coeffs.size()) {
      r.coeffs.push_back(a.coeffs[i]);
    } else {
      r.coeffs.push_back(k.add(a.coeffs[i], b.coeffs[i]));
    }
  }
  trim(k, r);
  return r;
}

template <CoefficientField K>
Poly<K> neg(const K& k, const Poly<K>& a) {
  Poly<K> r;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& c : a.coeffs) r.coeffs.push_back(k.neg(c));
  return r;
}

template <CoefficientField K>
Poly<K> sub(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) return a;
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  Poly<K> r;
  r.coeffs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.coeffs.size()) {
      r.coeffs.push_back(k.neg(b.coeffs[i]));
    } else if (i >= b.coeffs.size()) {
      r.coeffs.push_back(a.coeffs[i]);
    } else {
      r.coeffs.push_back(k.sub(a.coeffs[i], b.coeffs[i]));
    }
  }
  trim(k, r);
  return r;
}

template <CoefficientField K>
Poly<K> scale(const K& k, const Poly<K>& a, const typename K::value_type& c) {
  if (k.is_zero(c)) return {};
  if (k.equal(c, k.one())) return a;
  Poly<K> r;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& x : a.coeffs) r.coeffs.push_back(k.mul(x, c));
  // A field has no zero divisors, so no trimming is needed.
  return r;
}

template <CoefficientField K>
Poly<K> mul(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.coeffs.size() == 1) return scale(k, b, a.coeffs[0]);
  if (b.coeffs.size() == 1) return scale(k, a, b.coeffs[0]);
  const std::size_t n = a.coeffs.size() + b.coeffs.size() - 1;
  std::vector<typename K::value_type> acc(n, k.zero());
  std::vector<bool> touched(n, false);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (k.is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (k.is_zero(b.coeffs[j])) continue;
      auto t = k.mul(a.coeffs[i], b.coeffs[j]);
      if (touched[i + j]) {
        acc[i + j] = k.add(acc[i + j], t);
      } else {
        acc[i + j] = std::move(t);
        touched[i + j] = true;
      }
    }
  }
  Poly<K> r(std::move(acc));
  trim(k, r);
  return r;
}

template <CoefficientField K>
Poly<K> monic(const K& k, const Poly<K>& a) {
  if (a.is_zero()) return a;
  if (k.equal(a.leading(), k.one())) return a;
  return scale(k, a, k.inv(a.leading()));
}

/// a = q * b + r with deg r < deg b.
template <CoefficientField K>
std::pair<Poly<K>, Poly<K>> divmod(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by the zero polynomial");
  if (a.degree() < b.degree()) return {Poly<K>{}, a};
  const bool unit_lead = k.equal(b.leading(), k.one());
  const auto lead_inv = unit_lead ? k.one() : k.inv(b.leading());
  std::vector<typename K::value_type> r = a.coeffs;
  const std::size_t db = b.coeffs.size() - 1;
  const std::size_t qn = a.coeffs.size() - db;
  std::vector<typename K::value_type> q(qn, k.zero());
  for (std::size_t i = qn; i-- > 0;) {
    const auto& top = r[i + db];
    if (k.is_zero(top)) continue;
    auto c = unit_lead ? top : k.mul(top, lead_inv);
    for (std::size_t j = 0; j < db; ++j) {
      if (k.is_zero(b.coeffs[j])) continue;
      r[i + j] = k.sub(r[i + j], k.mul(c, b.coeffs[j]));
    }
    r[i + db] = k.zero();
    q[i] = std::move(c);
  }
  r.resize(db);
  Poly<K> qp(std::move(q)), rp(std::move(r));
  trim(k, qp);
  trim(k, rp);
  return {std::move(qp), std::move(rp)};
}

template <CoefficientField K>
Poly<K> rem(const K& k, const Poly<K>& a, const Poly<K>& b) {
  return divmod(k, a, b).second;
}

/// Exact quotient; the caller guarantees b divides a.
template <CoefficientField K>
Poly<K> exact_quotient(const K& k, const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divmod(k, a, b);
  if (!r.is_zero()) throw InvariantViolation("exact polynomial division left a remainder");
  return q;
}

/// Monic gcd by Euclid's algorithm with monic remainders.
template <CoefficientField K>
Poly<K> gcd(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  Poly<K> u = monic(k, a), v = monic(k, b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    if (v.degree() == 0) return one(k);
    Poly<K> r = monic(k, rem(k, u, v));
    u = std::move(v);
    v = std::move(r);
  }
  return u;
}

template <class E>
struct ExtGcd {
  Polynomial<E> g;  // monic
  Polynomial<E> u;
  Polynomial<E> v;
};

/// u a + v b = g with g = gcd(a, b) monic.
template <CoefficientField K>
ExtGcd<typename K::value_type> ext_gcd(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("extended gcd of two zero polynomials");
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = one(k), s1{};
  Poly<K> t0{}, t1 = one(k);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(k, r0, r1);
    Poly<K> s = sub(k, s0, mul(k, q, s1));
    Poly<K> t = sub(k, t0, mul(k, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  const auto c = k.inv(r0.leading());
  return {scale(k, r0, c), scale(k, s0, c), scale(k, t0, c)};
}

/// Inverse of a modulo m (only the cofactor of a is tracked). Throws
/// InvariantViolation when gcd(a, m) is not a unit and DivisionByZero for a = 0.
template <CoefficientField K>
Poly<K> inverse_mod(const K& k, const Poly<K>& a, const Poly<K>& m) {
  Poly<K> r0 = rem(k, a, m);
  if (r0.is_zero()) throw DivisionByZero("inverse of zero modulo a polynomial");
  if (r0.degree() == 0) return constant(k, k.inv(r0.coeffs[0]));
  Poly<K> r1 = m;
  Poly<K> s0 = one(k), s1{};
  while (!r1.is_zero()) {
    auto [q, r] = divmod(k, r0, r1);
    Poly<K> s = sub(k, s0, mul(k, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) {
    throw InvariantViolation("modulus is reducible: gcd with the element is not a unit");
  }
  return rem(k, scale(k, s0, k.inv(r0.coeffs[0])), m);
}

template <CoefficientField K>
typename K::value_type eval(const K& k, const Poly<K>& a, const typename K::value_type& x) {
  typename K::value_type acc = k.zero();
  for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = k.add(k.mul(acc, x), a.coeffs[i]);
  return acc;
}

/// Resultant by the Euclidean remainder sequence over the field:
/// res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r) with r = a mod b.
template <CoefficientField K>
typename K::value_type resultant(const K& k, const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() || b.is_zero()) throw PreconditionError("resultant of a zero polynomial");
  using V = typename K::value_type;
  Poly<K> f = a, g = b;
  V acc = k.one();
  while (true) {
    const long df = f.degree(), dg = g.degree();
    if (dg == 0) {
      V lead_pow = k.one();
      for (long i = 0; i < df; ++i) lead_pow = k.mul(lead_pow, g.coeffs[0]);
      return k.mul(acc, lead_pow);
    }
    if (df == 0) {
      V lead_pow = k.one();
      for (long i = 0; i < dg; ++i) lead_pow = k.mul(lead_pow, f.coeffs[0]);
      return k.mul(acc, lead_pow);
    }
    Poly<K> r = rem(k, f, g);
    if (r.is_zero()) return k.zero();
    if ((df * dg) % 2 == 1) acc = k.neg(acc);
    const long dr = r.degree();
    for (long i = 0; i < df - dr; ++i) acc = k.mul(acc, g.leading());
    f = std::move(g);
    g = std::move(r);
  }
}

}  // namespace poly

/// Optional capability of a coefficient field: a cheap sufficient test for
/// gcd(a, b) = 1. A false answer carries no information.
template <class K>
concept CoprimeCertifier = requires(const K& k, const Polynomial<typename K::value_type>& a) {
  { k.certify_coprime(a, a) } -> std::convertible_to<bool>;
};

/// Field of fractions of K[X] with reduced, monic-denominator representatives.
template <CoefficientField K>
class RatFuncField {
 public:
  using base_value = typename K::value_type;
  using value_type = RatFunc<base_value>;
  using Poly = Polynomial<base_value>;

  explicit RatFuncField(K base) : k_(std::move(base)) {}

  const K& base() const { return k_; }

  value_type zero() const { return {Poly{}, poly::one(k_)}; }
  value_type one() const { return {poly::one(k_), poly::one(k_)}; }
  value_type from_base(const base_value& c) const { return {poly::constant(k_, c), poly::one(k_)}; }
  value_type from_poly(Poly p) const { return {std::move(p), poly::one(k_)}; }
  /// X as a rational function.
  value_type variable() const { return from_poly(poly::monomial(k_, k_.one(), 1)); }

  /// Brings an arbitrary fraction into canonical form.
  value_type normalize(Poly num, Poly den) const {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) return zero();
    if (den.degree() > 0 && num.degree() >= 0 && !known_coprime(num, den)) {
      // One side often divides the other; that needs a single division.
      if (num.degree() >= den.degree()) {
        auto [q, r] = poly::divmod(k_, num, den);
        if (r.is_zero()) return from_poly(std::move(q));
      } else {
        auto [q, r] = poly::divmod(k_, den, num);
        if (r.is_zero()) return monic_den(poly::one(k_), std::move(q));
      }
      Poly g = poly::gcd(k_, num, den);
      if (g.degree() > 0) {
        num = poly::exact_quotient(k_, num, g);
        den = poly::exact_quotient(k_, den, g);
      }
    }
    return monic_den(std::move(num), std::move(den));
  }

  /// normalize(), first dividing out any of the candidate factors that divide
  /// both sides. Cheap when the common factor is among the candidates.
  value_type normalize_with(Poly num, Poly den, const std::vector<Poly>& candidates) const {
    if (num.is_zero()) return zero();
    for (const auto& f : candidates) {
      if (f.degree() <= 0) continue;
      while (den.degree() >= f.degree() && num.degree() >= f.degree()) {
        auto [qd, rd] = poly::divmod(k_, den, f);
        if (!rd.is_zero()) break;
        auto [qn, rn] = poly::divmod(k_, num, f);
        if (!rn.is_zero()) break;
        den = std::move(qd);
        num = std::move(qn);
      }
    }
    return normalize(std::move(num), std::move(den));
  }

  bool is_zero(const value_type& a) const { return a.num.is_zero(); }
  bool equal(const value_type& a, const value_type& b) const {
    return poly::equal(k_, a.num, b.num) && poly::equal(k_, a.den, b.den);
  }
  bool is_polynomial(const value_type& a) const { return a.den.degree() == 0; }

  value_type add(const value_type& a, const value_type& b) const {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    const bool pa = is_polynomial(a), pb = is_polynomial(b);
    if (pa && pb) return from_poly(poly::add(k_, a.num, b.num));
    if (pa) return {poly::add(k_, poly::mul(k_, a.num, b.den), b.num), b.den};
    if (pb) return {poly::add(k_, a.num, poly::mul(k_, b.num, a.den)), a.den};
    if (poly::equal(k_, a.den, b.den)) return normalize(poly::add(k_, a.num, b.num), a.den);
    // Henrici: only the common factor of the denominators can cancel.
    Poly g = known_coprime(a.den, b.den) ? poly::one(k_) : poly::gcd(k_, a.den, b.den);
    if (g.degree() == 0) {
      Poly num = poly::add(k_, poly::mul(k_, a.num, b.den), poly::mul(k_, b.num, a.den));
      if (num.is_zero()) return zero();
      return {std::move(num), poly::mul(k_, a.den, b.den)};
    }
    Poly ad = poly::exact_quotient(k_, a.den, g);
    Poly bd = poly::exact_quotient(k_, b.den, g);
    Poly num = poly::add(k_, poly::mul(k_, a.num, bd), poly::mul(k_, b.num, ad));
    if (num.is_zero()) return zero();
    if (known_coprime(num, g)) return {std::move(num), poly::mul(k_, poly::mul(k_, ad, bd), g)};
    Poly h = poly::gcd(k_, num, g);
    if (h.degree() > 0) {
      num = poly::exact_quotient(k_, num, h);
      g = poly::exact_quotient(k_, g, h);
    }
    return {std::move(num), poly::mul(k_, poly::mul(k_, ad, bd), g)};
  }

  value_type neg(const value_type& a) const { return {poly::neg(k_, a.num), a.den}; }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }

  value_type mul(const value_type& a, const value_type& b) const {
    if (is_zero(a) || is_zero(b)) return zero();
    const bool pa = is_polynomial(a), pb = is_polynomial(b);
    if (pa && pb) return from_poly(poly::mul(k_, a.num, b.num));
    // Cross-cancel so the product of reduced fractions stays reduced.
    Poly an = a.num, ad = a.den, bn = b.num, bd = b.den;
    cancel(an, bd);
    cancel(bn, ad);
    return {poly::mul(k_, an, bn), poly::mul(k_, ad, bd)};
  }

  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw DivisionByZero("inverse of the zero rational function");
    return monic_den(a.den, a.num);
  }

  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  /// Multiplies by a base-field scalar.
  value_type scale(const value_type& a, const base_value& c) const {
    if (k_.is_zero(c)) return zero();
    return {poly::scale(k_, a.num, c), a.den};
  }

  /// Monic gcd, skipping the computation when coprimality is certified.
  Poly gcd_certified(const Poly& a, const Poly& b) const {
    if (known_coprime(a, b)) return poly::one(k_);
    return poly::gcd(k_, a, b);
  }

  /// Monic lcm of two nonzero polynomials.
  Poly lcm(const Poly& a, const Poly& b) const {
    if (poly::equal(k_, a, b)) return poly::monic(k_, a);
    if (known_coprime(a, b)) return poly::monic(k_, poly::mul(k_, a, b));
    if (a.degree() >= b.degree() && poly::rem(k_, a, b).is_zero()) return poly::monic(k_, a);
    if (b.degree() >= a.degree() && poly::rem(k_, b, a).is_zero()) return poly::monic(k_, b);
    Poly g = poly::gcd(k_, a, b);
    return poly::monic(k_, poly::mul(k_, a, poly::exact_quotient(k_, b, g)));
  }

 private:
  bool known_coprime(const Poly& a, const Poly& b) const {
    if constexpr (CoprimeCertifier<K>) {
      return k_.certify_coprime(a, b);
    } else {
      return false;
    }
  }

  value_type monic_den(Poly num, Poly den) const {
    if (!k_.equal(den.leading(), k_.one())) {
      auto c = k_.inv(den.leading());
      num = poly::scale(k_, num, c);
      den = poly::scale(k_, den, c);
    }
    return {std::move(num), std::move(den)};
  }

  // Removes gcd(n, d) from both; d stays monic when it was monic.
  void cancel(Poly& n, Poly& d) const {
    if (d.degree() <= 0 || n.degree() <= 0 || known_coprime(n, d)) return;
    Poly g = poly::gcd(k_, n, d);
    if (g.degree() == 0) return;
    n = poly::exact_quotient(k_, n, g);
    d = poly::exact_quotient(k_, d, g);
  }

  K k_;
};

namespace poly {

/// Inverse of a modulo m over the fraction field cf = K(X), where m is monic
/// in Y with polynomial coefficients. Works in K[X][Y]: denominators and the
/// content of a are cleared, an extended subresultant sequence produces
/// S a = r (mod m) with r in K[X] using exact divisions only, and the quotient
/// S / r is reduced once at the end.
template <CoefficientField K>
Polynomial<RatFunc<typename K::value_type>> inverse_mod_subresultant(
    const RatFuncField<K>& cf, const Polynomial<RatFunc<typename K::value_type>>& a,
    const Polynomial<RatFunc<typename K::value_type>>& m) {
  using P = Polynomial<typename K::value_type>;
  using Row = std::vector<P>;  // polynomial in Y over K[X], lowest degree first
  const K& k = cf.base();
  const std::size_t n = m.coeffs.size() - 1;
  if (a.is_zero()) throw DivisionByZero("inverse of zero modulo a polynomial");
  if (a.coeffs.size() > n) throw PreconditionError("operand not reduced modulo the polynomial");

  auto deg = [](const Row& r) { return static_cast<long>(r.size()) - 1; };
  auto trim_row = [](Row& r) {
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  };
  auto scale_row = [&](const Row& r, const P& c) {
    Row out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = mul(k, r[i], c);
    return out;
  };
  auto divide_row = [&](Row& r, const P& c) {
    if (is_one(k, c)) return;
    for (auto& e : r) {
      if (!e.is_zero()) e = exact_quotient(k, e, c);
    }
  };
  // r <- c * r - t * Y^shift * b
  auto axpy = [&](Row& r, const P& c, const P& t, std::size_t shift, const Row& b) {
    if (r.size() < b.size() + shift) r.resize(b.size() + shift);
    for (auto& e : r) e = mul(k, e, c);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_zero()) r[i + shift] = sub(k, r[i + shift], mul(k, t, b[i]));
    }
    trim_row(r);
  };
  auto pow_p = [&](const P& c, long e) {
    P out = one(k);
    for (long i = 0; i < e; ++i) out = mul(k, out, c);
    return out;
  };

  // Clear denominators.
  P den = a.coeffs[0].den;
  for (std::size_t j = 1; j < a.coeffs.size(); ++j) den = cf.lcm(den, a.coeffs[j].den);
  Row b_row(a.coeffs.size());
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    const auto& c = a.coeffs[j];
    if (!c.num.is_zero()) b_row[j] = mul(k, c.num, exact_quotient(k, den, c.den));
  }
  // Remove the content.
  P content;
  for (const auto& e : b_row) {
    if (e.is_zero()) continue;
    content = content.is_zero() ? monic(k, e) : cf.gcd_certified(content, e);
    if (content.degree() == 0) break;
  }
  if (content.degree() > 0) divide_row(b_row, content);
  // a = content * b_row / den.
  if (deg(b_row) == 0) {
    return Polynomial<RatFunc<typename K::value_type>>(
        {cf.normalize(den, mul(k, content, b_row[0]))});
  }

  Row a_row(n + 1);
  for (std::size_t j = 0; j <= n; ++j) a_row[j] = m.coeffs[j].num;
  Row ta, tb{one(k)};
  P g = one(k), h = one(k);
  while (true) {
    const long delta = deg(a_row) - deg(b_row);
    // Pseudo-remainder lc(b)^(delta+1) a mod b, with the same operations on the cofactor.
    Row r = a_row, tr = ta;
    const P& lb = b_row.back();
    long uses = delta + 1;
    while (!r.empty() && deg(r) >= deg(b_row)) {
      const P lt = r.back();
      const auto shift = static_cast<std::size_t>(deg(r) - deg(b_row));
      axpy(r, lb, lt, shift, b_row);
      axpy(tr, lb, lt, shift, tb);
      --uses;
    }
    if (r.empty()) throw InvariantViolation("modulus is reducible: gcd with the element is not a unit");
    if (uses > 0) {
      const P extra = pow_p(lb, uses);
      r = scale_row(r, extra);
      tr = scale_row(tr, extra);
    }
    const P divisor = mul(k, g, pow_p(h, delta));
    divide_row(r, divisor);
    divide_row(tr, divisor);
    a_row = std::move(b_row);
    ta = std::move(tb);
    b_row = std::move(r);
    tb = std::move(tr);
    g = a_row.back();
    h = delta == 1 ? g : exact_quotient(k, pow_p(g, delta), pow_p(h, delta - 1));
    if (deg(b_row) == 0) break;
  }

  // tb * (b_row / content) = b_row[0] mod m, hence a^{-1} = den * tb / (content * b_row[0]).
  Polynomial<P> tbp(std::move(tb));
  Polynomial<P> mp;
  for (const auto& c : m.coeffs) mp.coeffs.push_back(c.num);
  while (static_cast<long>(tbp.coeffs.size()) > static_cast<long>(n)) {
    const P lt = tbp.coeffs.back();
    const std::size_t shift = tbp.coeffs.size() - 1 - n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!mp.coeffs[i].is_zero()) {
        tbp.coeffs[i + shift] = sub(k, tbp.coeffs[i + shift], mul(k, lt, mp.coeffs[i]));
      }
    }
    tbp.coeffs.pop_back();
  }
  Row nums(tbp.coeffs.begin(), tbp.coeffs.end());
  trim_row(nums);
  P res = mul(k, content, b_row[0]);
  for (auto& e : nums) {
    if (!e.is_zero()) e = mul(k, e, den);
  }
  // Cheap cancellations first: factors of the original denominators, the
  // content and X itself; each coordinate is then reduced on its own.
  std::vector<P> candidates{monomial(k, k.one(), 1)};
  if (content.degree() > 0) candidates.push_back(content);
  for (const auto& c : a.coeffs) {
    if (c.den.degree() > 0) candidates.push_back(c.den);
  }
  Polynomial<RatFunc<typename K::value_type>> out;
  out.coeffs.reserve(nums.size());
  for (auto& e : nums) out.coeffs.push_back(cf.normalize_with(std::move(e), res, candidates));
  trim(cf, out);
  return out;
}

}  // namespace poly

}  // namespace fermat
