#pragma once

// The field tower F_0 = Q, F_{s+1} = F_s(x_s)[y_s] / (x_s^p + y_s^p - 1).
//
// An element at level s+1 is a polynomial in y_s of degree < p_s whose
// coefficients are reduced rational functions in x_s over F_s. Every
// coefficient at every depth is kept in canonical form (reduced, monic
// denominator), so two elements at the same level are equal as field
// elements exactly when they are structurally equal.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/arith.hpp"
#include "fermat/error.hpp"
#include "fermat/modp.hpp"
#include "fermat/poly.hpp"

namespace fermat {

class TowerElem;
/// Element of F_s(x_s): a reduced fraction of polynomials in x_s over F_s.
using Coeff = RatFunc<TowerElem>;
/// Polynomial in y_s with coefficients in F_s(x_s).
using YPoly = Polynomial<Coeff>;

class TowerElem {
 public:
  /// Rational zero.
  TowerElem();
  /// A rational constant at level 0.
  explicit TowerElem(Rational q);

  /// Wraps a y-polynomial that is already canonical for `level` >= 1.
  static TowerElem from_ypoly(std::size_t level, YPoly ys);

  std::size_t level() const { return level_; }
  bool is_zero() const;
  /// Level-0 value. Only valid when level() == 0.
  const Rational& rational() const;
  /// y-polynomial. Only valid when level() >= 1.
  const YPoly& ys() const;
  std::size_t hash() const;

  /// Structural equality: same level and same canonical form.
  friend bool operator==(const TowerElem& a, const TowerElem& b);

  /// Memo slot for Tower::mod_image, keyed by the tower's id. `den` = 0
  /// records an undefined image.
  struct ImageMemo {
    std::uint64_t key = 0;
    std::uint64_t num = 0;
    std::uint64_t den = 0;
  };
  ImageMemo memo() const;
  void set_memo(const ImageMemo& m) const;

 private:
  struct Rep;
  TowerElem(std::size_t level, std::shared_ptr<const Rep> rep);

  std::size_t level_ = 0;
  std::shared_ptr<const Rep> rep_;
};

struct TowerElemHash {
  std::size_t operator()(const TowerElem& a) const { return a.hash(); }
};

struct TowerConfig {
  /// Exponents p_0, p_1, ... ; the tower has one level per prime.
  std::vector<std::uint64_t> primes;
  /// Without this flag the primes must be a prefix of the prime schedule
  /// (5, 2309, ...). With it any distinct odd primes are accepted, 3 included.
  bool unchecked = false;
};

class Tower;

/// F_level as a coefficient field for the polynomial kernel.
struct LevelField {
  using value_type = TowerElem;

  const Tower* tower;
  std::size_t level;

  TowerElem zero() const;
  TowerElem one() const;
  TowerElem add(const TowerElem& a, const TowerElem& b) const;
  TowerElem sub(const TowerElem& a, const TowerElem& b) const;
  TowerElem mul(const TowerElem& a, const TowerElem& b) const;
  TowerElem neg(const TowerElem& a) const;
  TowerElem inv(const TowerElem& a) const;
  bool is_zero(const TowerElem& a) const { return a.is_zero(); }
  bool equal(const TowerElem& a, const TowerElem& b) const { return a == b; }
  bool certify_coprime(const Polynomial<TowerElem>& a, const Polynomial<TowerElem>& b) const;
};

/// F_level(x_level).
using CoeffField = RatFuncField<LevelField>;

/// Images of generators for substitution. Missing entries are unmapped.
struct GeneratorImages {
  std::map<std::size_t, TowerElem> x;
  std::map<std::size_t, TowerElem> y;
};

class Tower {
 public:
  /// Validates the configuration: odd, distinct primes; the schedule prefix
  /// unless `unchecked` is set.
  explicit Tower(TowerConfig config);

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const TowerConfig& config() const { return config_; }
  std::size_t depth() const { return config_.primes.size(); }
  std::uint64_t prime(std::size_t i) const;

  TowerElem zero(std::size_t level = 0) const;
  TowerElem one(std::size_t level = 0) const;
  TowerElem rational(const Rational& q) const { return TowerElem(q); }
  TowerElem integer(long n) const { return TowerElem(Rational(n)); }

  /// x_i and y_i, represented at level i + 1.
  TowerElem gen_x(std::size_t i) const;
  TowerElem gen_y(std::size_t i) const;

  // Operands are coerced to the larger of their levels.
  TowerElem add(const TowerElem& a, const TowerElem& b) const;
  TowerElem sub(const TowerElem& a, const TowerElem& b) const;
  TowerElem mul(const TowerElem& a, const TowerElem& b) const;
  TowerElem neg(const TowerElem& a) const;
  TowerElem inv(const TowerElem& a) const;
  TowerElem div(const TowerElem& a, const TowerElem& b) const;
  TowerElem pow(const TowerElem& a, std::uint64_t n) const;

  /// True iff a - b is zero.
  bool eq(const TowerElem& a, const TowerElem& b) const;

  /// Represents `a` at a higher level. Lowering is not offered.
  TowerElem coerce(const TowerElem& a, std::size_t level) const;

  std::size_t level_of(const TowerElem& a) const { return a.level(); }
  /// The rational value when the canonical form is a constant.
  std::optional<Rational> is_rational(const TowerElem& a) const;

  /// Ring-homomorphic evaluation with generators replaced by `images`.
  TowerElem substitute(const TowerElem& a, const GeneratorImages& images) const;

  /// x_i^p_i + y_i^p_i - 1 evaluated at (a, b) for level i's prime.
  TowerElem fermat_form(std::size_t i, const TowerElem& a, const TowerElem& b) const;

  /// Stable canonical text: rationals as n or n/d; a level-s element as
  /// [c_0,c_1,...] with c_j = (numerator-list/denominator-list) and the
  /// lists holding level-(s-1) serializations.
  std::string serialize(const TowerElem& a) const;
  /// Human-readable form in the generator names x0, y0, x1, ...
  std::string format(const TowerElem& a) const;

  /// Generator levels (i such that x_i or y_i occurs) in the canonical form.
  std::vector<std::size_t> support(const TowerElem& a) const;

  LevelField field(std::size_t level) const { return {this, level}; }
  CoeffField coeff_field(std::size_t level) const { return CoeffField(field(level)); }

  // Same-level arithmetic used by LevelField; both operands must be at `level`.
  TowerElem add_at(std::size_t level, const TowerElem& a, const TowerElem& b) const;
  TowerElem sub_at(std::size_t level, const TowerElem& a, const TowerElem& b) const;
  TowerElem mul_at(std::size_t level, const TowerElem& a, const TowerElem& b) const;
  TowerElem neg_at(std::size_t level, const TowerElem& a) const;
  TowerElem inv_at(std::size_t level, const TowerElem& a) const;

  /// Image under the homomorphism x_i -> c_i, y_i -> r_i into F_ell, where
  /// (c_i, r_i) is a fixed point of the level-i curve. Nothing when a
  /// denominator is not invertible there.
  std::optional<std::uint64_t> mod_image(const TowerElem& a) const;
  /// True only if gcd(a, b) = 1, shown through the images above.
  bool certify_coprime(const Polynomial<TowerElem>& a, const Polynomial<TowerElem>& b) const;
  const ModP& modp() const { return modp_; }

 private:
  void check_level(std::size_t level) const;
  YPoly reduce(std::size_t level, YPoly p) const;

  TowerConfig config_;
  std::vector<TowerElem> zeros_;
  std::vector<TowerElem> ones_;
  std::vector<TowerElem> gen_x_;
  std::vector<TowerElem> gen_y_;
  // Per level L >= 1: 1 - x^p and the modulus Y^p + x^p - 1 over F_{L-1}(x).
  std::vector<Coeff> one_minus_xp_;
  std::vector<YPoly> modulus_;
  // Per level: the factors x - 1 and 1 + x + ... + x^(p-1) of 1 - x^p.
  std::vector<std::vector<Polynomial<TowerElem>>> u_factors_;
  std::uint64_t id_ = 0;
  ModP modp_{0};
  std::vector<std::uint64_t> point_x_;
  std::vector<std::uint64_t> point_y_;
};

/// Evaluation target for `evaluate`: any structure with field operations and
/// chosen images for the generators.
template <class A>
concept EvaluationAlgebra = requires(A& alg, const typename A::value_type& v, const Rational& q,
                                     std::size_t i) {
  { alg.from_rational(q) } -> std::convertible_to<typename A::value_type>;
  { alg.add(v, v) } -> std::convertible_to<typename A::value_type>;
  { alg.mul(v, v) } -> std::convertible_to<typename A::value_type>;
  { alg.inv(v) } -> std::convertible_to<typename A::value_type>;
  { alg.is_zero(v) } -> std::convertible_to<bool>;
  { alg.image_x(i) } -> std::convertible_to<typename A::value_type>;
  { alg.image_y(i) } -> std::convertible_to<typename A::value_type>;
};

namespace detail {

template <EvaluationAlgebra A>
typename A::value_type evaluate_poly_in(const Polynomial<TowerElem>& p, A& alg,
                                        const std::optional<typename A::value_type>& var);

template <EvaluationAlgebra A>
typename A::value_type evaluate_impl(const TowerElem& a, A& alg) {
  using V = typename A::value_type;
  if (a.level() == 0) return alg.from_rational(a.rational());
  const std::size_t gen = a.level() - 1;
  const YPoly& ys = a.ys();
  if (ys.is_zero()) return alg.from_rational(Rational(0));

  // Generator images are looked up only when the generator actually occurs,
  // so partial maps can be applied to elements that avoid the gaps.
  bool needs_x = false;
  for (const auto& c : ys.coeffs) needs_x = needs_x || c.num.degree() > 0 || c.den.degree() > 0;
  std::optional<V> xi;
  if (needs_x) xi = alg.image_x(gen);
  std::optional<V> yi;
  if (ys.degree() > 0) yi = alg.image_y(gen);

  std::optional<V> acc;
  for (std::size_t j = ys.coeffs.size(); j-- > 0;) {
    if (acc) acc = alg.mul(*acc, *yi);
    const Coeff& c = ys.coeffs[j];
    if (c.num.is_zero()) continue;
    V term = evaluate_poly_in(c.num, alg, xi);
    if (c.den.degree() > 0) {
      V den = evaluate_poly_in(c.den, alg, xi);
      if (alg.is_zero(den)) {
        throw SubstitutionSingularity("denominator vanishes under the generator map");
      }
      term = alg.mul(term, alg.inv(den));
    }
    acc = acc ? alg.add(*acc, term) : term;
  }
  return acc ? *acc : alg.from_rational(Rational(0));
}

template <EvaluationAlgebra A>
typename A::value_type evaluate_poly_in(const Polynomial<TowerElem>& p, A& alg,
                                        const std::optional<typename A::value_type>& var) {
  using V = typename A::value_type;
  std::optional<V> acc;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    if (acc) acc = alg.mul(*acc, *var);
    if (p.coeffs[k].is_zero()) continue;
    V c = evaluate_impl(p.coeffs[k], alg);
    acc = acc ? alg.add(*acc, c) : c;
  }
  return acc ? *acc : alg.from_rational(Rational(0));
}

}  // namespace detail

/// Evaluates the canonical form of `a` in `alg`, replacing x_i and y_i by the
/// algebra's images. Throws SubstitutionSingularity when a denominator
/// evaluates to zero.
template <EvaluationAlgebra A>
typename A::value_type evaluate(const TowerElem& a, A& alg) {
  return detail::evaluate_impl(a, alg);
}

}  // namespace fermat
