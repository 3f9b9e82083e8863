#pragma once

// Fields as black boxes over codes 0, 1, 2, ...
//
// A presentation realizes field elements lazily. Codes are handed out in
// blocks of 16 whose order is permuted by the renumbering: the k-th new
// element seen in a block (an operation result or enumeration output) gets
// the block's k-th permuted code. Code order is therefore a deterministic
// function of the sequence of calls made on the presentation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fermat/tower.hpp"

namespace fermat {

using Code = std::uint64_t;

/// Deterministic enumeration of F_L by formula size: size 1 is
/// 0, 1, x_0, y_0, ..., x_{L-1}, y_{L-1}; size k holds the new values of
/// neg and inv on size k-1, then add, sub, mul, div on sizes (i, k-1-i) for
/// i = 1, ..., k-2. Every element of F_L is some finite formula, so every
/// element is eventually produced, once.
class FormulaEnumerator {
 public:
  FormulaEnumerator(const Tower& tower, std::size_t level);

  /// Next new element, represented at `level`.
  TowerElem next();
  std::size_t produced() const { return produced_; }

 private:
  bool try_emit(const TowerElem& e, TowerElem& out);

  const Tower& tower_;
  std::size_t level_;
  std::vector<std::vector<TowerElem>> gens_;
  std::unordered_map<TowerElem, bool, TowerElemHash> seen_;
  std::size_t produced_ = 0;
  // Cursor into the generation being built.
  std::size_t size_ = 1;
  std::size_t phase_ = 0;  // 0 leaves, 1 neg, 2 inv, 3 binary
  std::size_t split_ = 1;
  std::size_t op_ = 0;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
  std::vector<TowerElem> leaves_;
};

/// Index of a relabeling, in the order
/// (x,y), (y,x), (-y/x, 1/x), (1/x, -y/x), (-x/y, 1/y), (1/y, -x/y).
using RelabelChoice = unsigned;

/// The pair obtained from (x, y) by relabeling `r`.
std::pair<TowerElem, TowerElem> apply_relabeling(const Tower& t, RelabelChoice r,
                                                 const TowerElem& x, const TowerElem& y);

struct ScrambleSpec {
  /// Levels whose generator pair is swapped after relabeling.
  std::vector<std::size_t> swapped;
  /// Per-level relabeling; missing levels use 0.
  std::vector<RelabelChoice> relabel;
  /// 0 means no renumbering.
  std::uint64_t seed = 0;

  /// Text form used in reports, e.g. "swap={0} relabel=[2,0] seed=7".
  std::string describe() const;
  /// Parses "identity", or ';'-separated "swap=0,1" / "swap=all" /
  /// "relabel=2,0" items. `depth` resolves "all".
  static ScrambleSpec parse(const std::string& text, std::uint64_t seed, std::size_t depth);
  bool operator==(const ScrambleSpec&) const = default;
};

class Presentation;

/// The hidden isomorphism behind a scrambled presentation.
struct GroundTruth {
  /// sigma on generators; psi(a) is the code of sigma(a).
  GeneratorImages sigma;
  const Presentation* target = nullptr;

  /// psi(a).
  Code image_code(const TowerElem& a) const;
  /// The tower element a code stands for inside the target.
  TowerElem value(Code c) const;
  /// psi^{-1}(c) is not computed; checks compare on the sigma side.
};

class Presentation {
 public:
  /// Elements of F_level (all generators below `level`), unscrambled.
  static std::unique_ptr<Presentation> canonical(const Tower& tower, std::size_t level);
  static std::unique_ptr<Presentation> canonical(const Tower& tower) {
    return canonical(tower, tower.depth());
  }
  /// sigma-images of the canonical enumeration, renumbered by the seed.
  /// Throws PreconditionError for a relabel index outside 0..5 or a level
  /// beyond the tower.
  static std::unique_ptr<Presentation> scrambled(const Tower& tower, const ScrambleSpec& spec);

  Presentation(const Presentation&) = delete;
  Presentation& operator=(const Presentation&) = delete;

  const Tower& tower() const { return tower_; }
  std::size_t level() const { return level_; }
  bool is_scrambled() const { return scrambled_; }
  const ScrambleSpec& spec() const { return spec_; }

  Code zero() const;
  Code one() const;
  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code mul(Code a, Code b) const;
  Code neg(Code a) const;
  /// Throws DivisionByZero for the zero code.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t n) const;
  bool eq(Code a, Code b) const;

  /// Code of the n-th enumerated element.
  Code enumerate(std::size_t n) const;
  /// Makes sure codes 0 .. n-1 exist.
  void realize(std::size_t n) const;
  /// Length of the longest prefix 0 .. n-1 of existing codes.
  std::size_t realized() const;

  /// Count of ring operations evaluated so far.
  std::uint64_t op_count() const;

  /// The element behind a code. Canonical presentations only.
  TowerElem element(Code c) const;
  /// Code of an element of F_level. Canonical presentations only.
  Code encode(const TowerElem& a) const;

  /// Test-only view of the hidden isomorphism. Throws PreconditionError on a
  /// canonical presentation.
  friend GroundTruth ground_truth_iso(const Presentation& p);
  friend struct GroundTruth;

 private:
  Presentation(const Tower& tower, std::size_t level, bool scrambled, ScrambleSpec spec,
               GeneratorImages sigma);

  void check_code(Code c) const;
  Code intern(const TowerElem& v) const;
  Code assign(const TowerElem& v) const;
  bool assigned_below(std::size_t n) const;
  TowerElem value_of(Code c) const;
  TowerElem next_enumerated() const;

  const Tower& tower_;
  std::size_t level_;
  bool scrambled_;
  ScrambleSpec spec_;
  GeneratorImages sigma_;
  bool sigma_identity_;

  mutable std::recursive_mutex mu_;
  mutable FormulaEnumerator enum_;
  mutable std::mt19937_64 shuffle_rng_;
  mutable std::vector<std::optional<TowerElem>> values_;
  mutable std::unordered_map<TowerElem, Code, TowerElemHash> codes_;
  mutable std::vector<Code> enum_codes_;
  mutable std::array<std::size_t, 16> perm_{};
  mutable std::size_t slot_ = 16;
  mutable Code block_base_ = 0;
  mutable std::uint64_t ops_ = 0;
  Code zero_code_ = 0;
  Code one_code_ = 0;
};

GroundTruth ground_truth_iso(const Presentation& p);

/// n x n addition and multiplication tables over codes < n. The header
/// echoes the presentation's kind, spec and seed.
std::string table_dump(const Presentation& p, std::size_t n);

}  // namespace fermat
