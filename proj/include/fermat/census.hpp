#pragma once

// Solutions of X^p + Y^p = 1 in the tower: the two constant ones, the six
// obtained from (x_i, y_i) by relabeling, their x-sum z_i, and bounded
// searches that check nothing else turns up.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fermat/mpoly.hpp"
#include "fermat/presentation.hpp"
#include "fermat/tower.hpp"

namespace fermat {

enum class SolutionKind { trivial, nontrivial };

struct SolutionPair {
  TowerElem x;
  TowerElem y;
  SolutionKind kind = SolutionKind::nontrivial;
};

/// [(0,1), (1,0)] represented at level i+1.
std::vector<SolutionPair> trivial_solutions(const Tower& t, std::size_t i);

/// The six relabelings of (x_i, y_i), in relabeling order. Each is checked
/// against the relation; InvariantViolation otherwise.
std::vector<SolutionPair> six_solutions(const Tower& t, std::size_t i);

/// Trivial pairs followed by the six.
std::vector<SolutionPair> solution_catalog(const Tower& t, std::size_t i);

/// x + y + 1/y - x/y + 1/x - y/x at level i, checked against
/// ((1-x)/(1-x^p)) y^(p-1) + ((x-1)/x) y + (x^2+1)/x.
TowerElem z_element(const Tower& t, std::size_t i);

/// The closed form above, on its own.
TowerElem z_closed_form(const Tower& t, std::size_t i);

/// A relabeling as a pair of rational functions in X, Y (variables 0, 1).
struct Relabeling {
  RelabelChoice index;
  std::string formula;
  MFrac x;
  MFrac y;
};

/// The six relabelings in index order.
std::vector<Relabeling> relabelings();

struct RelabelingGroup {
  /// table[a][b] = index of r_a o r_b, i.e. r_b's pair substituted into r_a.
  std::array<std::array<RelabelChoice, 6>, 6> table{};
  std::array<unsigned, 6> orders{};
  /// Orders sorted ascending.
  std::array<unsigned, 6> order_profile() const;
};

/// Composes the relabelings symbolically, checks closure (InvariantViolation
/// otherwise) and returns the table. Also asserts the S3 order profile
/// 1, 2, 2, 2, 3, 3.
RelabelingGroup relabeling_group();

/// Pairs (a, b) of codes below `bound` in the canonical presentation of
/// F_{i+1} with a^p + b^p = 1, ordered by (a, b). Every pair must be in the
/// catalog; anything else raises InvariantViolation.
std::vector<SolutionPair> bounded_solution_search(const Tower& t, std::size_t i, std::size_t bound);

struct ExploratoryResult {
  std::vector<SolutionPair> in_catalog;
  std::vector<SolutionPair> outside_catalog;
};

/// Same search over the whole tower field rather than F_{i+1}. Pairs outside
/// the catalog are reported, not raised: nothing rules them out there.
ExploratoryResult exploratory_solution_search(const Tower& t, std::size_t i, std::size_t bound);

struct PsiReport {
  /// The x with x != 0, 1 and some partner y, both codes below the bound.
  std::vector<TowerElem> witnesses;
  TowerElem sum;
};

/// Collects the witnesses, requires exactly six (InsufficientBound below,
/// InvariantViolation above) and checks that their sum is z_element(i).
PsiReport psi_definition_report(const Tower& t, std::size_t i, std::size_t bound);
TowerElem psi_definition_check(const Tower& t, std::size_t i, std::size_t bound);

}  // namespace fermat
