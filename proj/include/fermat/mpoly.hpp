#pragma once

// Sparse multivariate polynomials over Q, used for elimination and for
// symbolic composition of birational substitutions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

/// Exponent vector; all polynomials that meet in one operation share a length.
using Monomial = std::vector<std::uint32_t>;

class MPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
  static MPoly constant(std::size_t nvars, const Rational& c);
  static MPoly variable(std::size_t nvars, std::size_t v);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value when is_constant().
  Rational constant_value() const;

  void add_term(const Monomial& m, const Rational& c);

  /// Largest exponent of `v`, or -1 for zero.
  long degree_in(std::size_t v) const;
  bool involves(std::size_t v) const { return degree_in(v) > 0; }
  long total_degree() const;
  /// Coefficients of v^0, v^1, ... as polynomials free of v.
  std::vector<MPoly> coeffs_in(std::size_t v) const;
  static MPoly from_coeffs_in(std::size_t v, const std::vector<MPoly>& cs);

  /// Leading term in lex order with variable 0 most significant.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const Rational& c) const;
  MPoly pow(std::uint64_t n) const;

  /// Replaces variable v by q.
  MPoly substitute(std::size_t v, const MPoly& q) const;

  /// Text with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// a / b when b divides a exactly; throws InvariantViolation otherwise.
MPoly exact_div(const MPoly& a, const MPoly& b);
/// Optional-style exact division: false when b does not divide a.
bool try_exact_div(const MPoly& a, const MPoly& b, MPoly& q);

/// Resultant with respect to variable v. Both inputs must have positive
/// degree in v. Evaluation/interpolation modulo word-size primes with enough
/// primes for the coefficient bound; a fraction-free (Bareiss) Sylvester
/// determinant when the dense evaluation grid would be too large.
MPoly resultant(const MPoly& a, const MPoly& b, std::size_t v);
/// The same, except that Chinese remaindering stops once two further primes
/// change no coefficient. Wrong only with negligible probability; callers
/// must check whatever they derive from it.
MPoly probable_resultant(const MPoly& a, const MPoly& b, std::size_t v);

/// Quotient N / D of multivariate polynomials, D nonzero. Not reduced;
/// equality is by cross multiplication.
struct MFrac {
  MPoly num;
  MPoly den;

  static MFrac from(const MPoly& p);
  friend MFrac operator+(const MFrac& a, const MFrac& b);
  friend MFrac operator-(const MFrac& a, const MFrac& b);
  friend MFrac operator*(const MFrac& a, const MFrac& b);
  MFrac operator-() const { return {-num, den}; }
  /// Throws DivisionByZero on a zero numerator.
  MFrac inverse() const;
  bool is_zero() const { return num.is_zero(); }
  bool same_as(const MFrac& o) const { return num * o.den == o.num * den; }
};

/// Evaluates p with variable v replaced by images[v], through a caller
/// supplied ring.
template <class V>
V evaluate_mpoly(const MPoly& p, const std::vector<V>& images,
                 const std::function<V(const Rational&)>& constant,
                 const std::function<V(const V&, const V&)>& add,
                 const std::function<V(const V&, const V&)>& mul) {
  V acc = constant(Rational(0));
  std::vector<std::vector<V>> powers(images.size());
  for (const auto& [m, c] : p.terms()) {
    V term = constant(c);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(images[v]);
      while (pw.size() < m[v]) pw.push_back(mul(pw.back(), images[v]));
      term = mul(term, pw[m[v] - 1]);
    }
    acc = add(acc, term);
  }
  return acc;
}

}  // namespace fermat
