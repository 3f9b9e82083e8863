#pragma once

// Algebraic dependence in the tower: annihilating polynomials of an element
// over the field generated by a few others, membership in a computably
// enumerable transcendence basis, and the intrinsic basis {z_i}.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/mpoly.hpp"
#include "fermat/tower.hpp"

namespace fermat {

/// Nonzero p(T) = sum_k coeffs[k] T^k with coefficients in Q(g_0, ..., g_{n-1})
/// (MPoly variable j is g_j), monic in T, and p(t) = 0 in the tower.
struct AnnihilatorWitness {
  std::vector<TowerElem> gens;
  std::vector<MFrac> coeffs;

  std::size_t generator_count() const { return gens.size(); }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// e.g. "T^5 + (g0^5 - 1)"; non-polynomial coefficients print as (n)/(d).
  std::string to_string() const;
};

/// True iff the witness is nonzero with positive degree and vanishes at t.
bool verify_witness(const Tower& tower, const AnnihilatorWitness& w, const TowerElem& t);

enum class AnnihilatorStrategy {
  /// Iterated resultants against the defining relations.
  elimination,
  /// Search for a Q-linear relation among the products g^a t^k.
  blind,
  /// Elimination, then the blind search if elimination gives nothing.
  elimination_then_blind,
};

struct BasisBudget {
  AnnihilatorStrategy strategy = AnnihilatorStrategy::elimination;
  /// Elimination gives up once an intermediate polynomial has more terms.
  std::size_t max_terms = 200'000;
  /// Total degree bound (in the generators and in T) for the blind search.
  std::size_t blind_max_degree = 6;
  /// member_basis tries n = 0 .. max_prefix - 1.
  std::size_t max_prefix = 4;
};

/// An annihilator of t over Q(gens), verified by exact evaluation before it
/// is returned. Nothing when the chosen strategy finds none within budget,
/// which does not mean t is transcendental over Q(gens).
std::optional<AnnihilatorWitness> annihilator(const Tower& tower, const TowerElem& t,
                                              const std::vector<TowerElem>& gens,
                                              const BasisBudget& budget = {});

/// A computable sequence a_0, a_1, ... of tower elements, finite because the
/// tower is.
struct BasisEnumeration {
  std::string name;
  std::size_t length = 0;
  std::function<TowerElem(std::size_t)> at;

  /// z_0, z_1, ...
  static BasisEnumeration intrinsic(const Tower& tower);
  /// x_0, x_1, ...
  static BasisEnumeration generators(const Tower& tower);
};

/// Decides t in A: finds the least n with an annihilator of t over
/// Q(a_0, ..., a_n), then answers whether t is one of a_0 .. a_n. Rational t
/// is never a basis element. BudgetExhausted when no prefix within the
/// budget yields an annihilator.
bool member_basis(const Tower& tower, const TowerElem& t, const BasisEnumeration& basis,
                  const BasisBudget& budget = {});

/// The same decision with the n and witness (over a_0 .. a_n) that settled it.
struct MembershipResult {
  bool member = false;
  std::size_t n = 0;
  std::optional<AnnihilatorWitness> witness;
};
MembershipResult member_basis_report(const Tower& tower, const TowerElem& t,
                                     const BasisEnumeration& basis, const BasisBudget& budget = {});

/// z_i.
TowerElem intrinsic_basis(const Tower& tower, std::size_t i);

/// Annihilators of z_i over Q(x_i) and of x_i over Q(z_i). InvariantViolation
/// if either cannot be produced.
std::pair<AnnihilatorWitness, AnnihilatorWitness> interdependence_check(const Tower& tower,
                                                                        std::size_t i);

/// The canonical form of `a` as a fraction in variables X_i = 2i, Y_i = 2i+1
/// (of `nvars` in total).
MFrac to_mfrac(const TowerElem& a, std::size_t nvars);

/// Q-coordinates of the elements after scaling all of them by one common
/// nonzero factor: a linear relation among the vectors is a linear relation
/// among the elements, and conversely.
std::vector<std::map<std::vector<std::uint32_t>, Rational>> rational_coordinates(
    const Tower& tower, const std::vector<TowerElem>& elems);

}  // namespace fermat
