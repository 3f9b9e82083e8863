#pragma once

// Synthesis of an embedding of the tower into another presentation of it:
// search the target for a nontrivial solution of X^p + Y^p = 1 at each
// level, send (x_s, y_s) there, and evaluate everything else through the
// target's operations.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/presentation.hpp"
#include "fermat/tower.hpp"

namespace fermat {

struct SearchBudget {
  /// Only the first max_codes elements of the target's domain listing
  /// (Presentation::enumerate) take part in the pair search.
  std::size_t max_codes = 4096;
  /// Cap on target operations spent by one search.
  std::uint64_t max_steps = 20'000'000;
};

using CodePair = std::pair<Code, Code>;

struct LevelImage {
  Code x = 0;
  Code y = 0;
  /// The rational solutions located before the search, as code pairs.
  std::vector<CodePair> rational;
  /// 1-based diagonal position of the chosen pair; 0 for a forced choice.
  std::uint64_t pairs_tried = 0;
  bool forced = false;
};

struct PartialEmbedding {
  std::vector<LevelImage> images;
  std::size_t levels_done() const { return images.size(); }
  bool operator==(const PartialEmbedding& o) const {
    if (images.size() != o.images.size()) return false;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].x != o.images[i].x || images[i].y != o.images[i].y) return false;
    }
    return true;
  }
};

/// Code of the rational q in the target, built from the one-code by target
/// additions, negation and one inversion.
Code rational_code(const Presentation& target, const Rational& q);

/// First pair (a, b) = (enumerate(i), enumerate(j)) in diagonal order
/// (i + j, then i) with a, b not the
/// zero or one code and a^p + b^p = 1 under target operations. Throws
/// PreconditionError when p is not a tower prime and BudgetExhausted when
/// the budget runs out; the latter says nothing about the target.
CodePair find_nontrivial_solution(const Presentation& target, std::uint64_t p,
                                  const SearchBudget& budget);

struct SynthesisOptions {
  /// Number of rational solutions each curve has; they are located and
  /// excluded before the search. The Fermat curves here have exactly 2.
  std::size_t rational_solutions = 2;
  /// Test hook: use these images instead of searching at the given levels.
  std::map<std::size_t, CodePair> forced;
};

/// Extends the embedding level by level up to `levels`. BudgetExhausted
/// names the level that failed.
PartialEmbedding synthesize(const Tower& tower, const Presentation& target, std::size_t levels,
                            const SearchBudget& budget, const SynthesisOptions& options = {});

/// f(a), by evaluating the canonical form of `a` with generators replaced by
/// their image codes. PreconditionError when `a` involves a level beyond
/// the embedding; InvariantViolation when a denominator maps to zero, which
/// only a corrupted embedding can cause.
Code apply(const PartialEmbedding& f, const TowerElem& a, const Presentation& target);

struct HomFailure {
  std::size_t sample = 0;
  std::string check;
  std::string detail;
};

struct HomReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::vector<HomFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Exact checks of f(a+b) = f(a)+f(b), f(ab) = f(a)f(b) and
/// f(a) = f(b) <=> a = b on seeded random pairs from the embedded levels.
HomReport verify_hom(const PartialEmbedding& f, const Tower& tower, const Presentation& target,
                     std::size_t sample_count, std::uint64_t seed);

struct LevelMatch {
  std::size_t level = 0;
  /// Which relabeling of (psi(x_s), psi(y_s)) the image pair is, if any.
  std::optional<RelabelChoice> relabeling;
};

struct ImageReport {
  std::vector<LevelMatch> levels;
  bool passed_at(std::size_t level) const;
  bool passed() const;
};

/// Decodes each image pair through the target's ground truth and matches it
/// against the six relabelings of the true images. PreconditionError on a
/// canonical target.
ImageReport verify_image(const PartialEmbedding& f, const Tower& tower, const Presentation& target);

/// Deterministic text report of a synthesis run.
std::string iso_report(const Tower& tower, const Presentation& target, const SearchBudget& budget,
                       const PartialEmbedding& f, const HomReport* hom, const ImageReport* image);

}  // namespace fermat
