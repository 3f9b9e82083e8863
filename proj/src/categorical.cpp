#include "fermat/categorical.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "fermat/error.hpp"
#include "fermat/sampling.hpp"

namespace fermat {

namespace {

Code integer_code(const Presentation& t, Integer n) {
  const bool negative = sgn(n) < 0;
  if (negative) n = -n;
  Code acc = t.zero();
  Code pw = t.one();
  while (sgn(n) != 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = t.add(acc, pw);
    n >>= 1;
    if (sgn(n) != 0) pw = t.add(pw, pw);
  }
  return negative ? t.neg(acc) : acc;
}

void check_prime(const Tower& t, std::uint64_t p) {
  const auto& ps = t.config().primes;
  if (std::find(ps.begin(), ps.end(), p) == ps.end()) {
    throw PreconditionError(std::to_string(p) + " is not a prime of the tower");
  }
}

bool satisfies(const Presentation& t, std::uint64_t p, Code a, Code b) {
  return t.add(t.pow(a, p), t.pow(b, p)) == t.one();
}

}  // namespace

Code rational_code(const Presentation& target, const Rational& q) {
  const Code n = integer_code(target, q.get_num());
  if (q.get_den() == 1) return n;
  return target.mul(n, target.inv(integer_code(target, q.get_den())));
}

namespace {

struct Found {
  CodePair codes;
  std::uint64_t position;
};

// Pairs are indexed through the target's listing of its domain rather than
// by raw code value: operation results take codes too, so raw order would
// be dominated by the powers the search itself computes.
Found search_pairs(const Presentation& target, std::uint64_t p, const SearchBudget& budget) {
  check_prime(target.tower(), p);
  if (budget.max_codes == 0 || budget.max_steps == 0) {
    throw PreconditionError("search budget must be positive");
  }
  const Code zero = target.zero(), one = target.one();
  const std::uint64_t start = target.op_count();
  std::unordered_map<Code, Code> power, rest;
  auto pw = [&](Code c) {
    auto it = power.find(c);
    if (it != power.end()) return it->second;
    return power[c] = target.pow(c, p);
  };
  const std::size_t n = budget.max_codes;
  std::uint64_t position = 0;
  for (std::size_t s = 0; s + 1 < 2 * n; ++s) {
    const std::size_t lo = s >= n ? s - n + 1 : 0;
    for (std::size_t i = lo; i <= std::min(s, n - 1); ++i) {
      ++position;
      const Code a = target.enumerate(i), b = target.enumerate(s - i);
      if (a == zero || a == one || b == zero || b == one) continue;
      if (target.op_count() - start > budget.max_steps) {
        throw BudgetExhausted("step budget of " + std::to_string(budget.max_steps) +
                              " operations spent before a solution for p = " + std::to_string(p));
      }
      auto it = rest.find(a);
      if (it == rest.end()) it = rest.emplace(a, target.sub(one, pw(a))).first;
      if (pw(b) == it->second) return {{a, b}, position};
    }
  }
  throw BudgetExhausted("no nontrivial solution for p = " + std::to_string(p) + " among the first " +
                        std::to_string(n) + " listed elements");
}

}  // namespace

CodePair find_nontrivial_solution(const Presentation& target, std::uint64_t p,
                                  const SearchBudget& budget) {
  return search_pairs(target, p, budget).codes;
}

PartialEmbedding synthesize(const Tower& tower, const Presentation& target, std::size_t levels,
                            const SearchBudget& budget, const SynthesisOptions& options) {
  if (&target.tower() != &tower) throw PreconditionError("target presents a different tower");
  if (levels > tower.depth() || levels > target.level()) {
    throw PreconditionError("cannot embed " + std::to_string(levels) + " levels");
  }
  if (options.rational_solutions != 2) {
    throw PreconditionError("Fermat curves of prime exponent have exactly 2 rational solutions");
  }
  PartialEmbedding f;
  for (std::size_t s = 0; s < levels; ++s) {
    const std::uint64_t p = tower.prime(s);
    LevelImage img;
    const Code zero = target.zero(), one = target.one();
    for (CodePair r : {CodePair{zero, one}, CodePair{one, zero}}) {
      if (!satisfies(target, p, r.first, r.second)) {
        throw InvariantViolation("rational solution missing from the target at level " +
                                 std::to_string(s));
      }
      img.rational.push_back(r);
    }
    if (auto it = options.forced.find(s); it != options.forced.end()) {
      auto [a, b] = it->second;
      if (a == zero || a == one || b == zero || b == one || !satisfies(target, p, a, b)) {
        throw PreconditionError("forced pair at level " + std::to_string(s) +
                                " is not a nontrivial solution");
      }
      img.x = a;
      img.y = b;
      img.forced = true;
    } else {
      Found found;
      try {
        found = search_pairs(target, p, budget);
      } catch (const BudgetExhausted& e) {
        throw BudgetExhausted("level " + std::to_string(s) + ": " + e.what());
      }
      img.x = found.codes.first;
      img.y = found.codes.second;
      img.pairs_tried = found.position;
    }
    f.images.push_back(std::move(img));
  }
  return f;
}

namespace {

struct CodeAlgebra {
  using value_type = Code;
  const Presentation& target;
  const PartialEmbedding& f;

  Code from_rational(const Rational& q) { return rational_code(target, q); }
  Code add(Code a, Code b) { return target.add(a, b); }
  Code mul(Code a, Code b) { return target.mul(a, b); }
  Code inv(Code a) { return target.inv(a); }
  bool is_zero(Code a) { return a == target.zero(); }
  Code image_x(std::size_t i) { return level(i).x; }
  Code image_y(std::size_t i) { return level(i).y; }

  const LevelImage& level(std::size_t i) {
    if (i >= f.levels_done()) {
      throw PreconditionError("generator of level " + std::to_string(i) +
                              " lies beyond the embedding");
    }
    return f.images[i];
  }
};

}  // namespace

Code apply(const PartialEmbedding& f, const TowerElem& a, const Presentation& target) {
  CodeAlgebra alg{target, f};
  try {
    return evaluate(a, alg);
  } catch (const SubstitutionSingularity& e) {
    throw InvariantViolation(std::string("embedding is corrupted: ") + e.what());
  }
}

HomReport verify_hom(const PartialEmbedding& f, const Tower& tower, const Presentation& target,
                     std::size_t sample_count, std::uint64_t seed) {
  HomReport r;
  ElementSampler sampler(tower, seed);
  const std::size_t level = f.levels_done();
  // Denominators stay at level 0: their images under a scramble are cheap to
  // invert, where a shifted y_1 in a level-2 target is not.
  auto draw = [&] { return level == 0 ? sampler.element(0) : sampler.element(level, 0); };
  for (std::size_t k = 0; k < sample_count; ++k) {
    const TowerElem a = draw();
    // An occasional repeat exercises the a = b direction of injectivity.
    const TowerElem b = sampler.uniform(0, 15) == 0 ? a : draw();
    ++r.samples;
    auto fail = [&](const std::string& check, const std::string& detail) {
      r.failures.push_back({k, check, detail});
    };
    try {
      const Code fa = apply(f, a, target), fb = apply(f, b, target);
      r.checks += 3;
      if (apply(f, tower.add(a, b), target) != target.add(fa, fb)) {
        fail("additive", tower.format(a) + " ; " + tower.format(b));
      }
      if (apply(f, tower.mul(a, b), target) != target.mul(fa, fb)) {
        fail("multiplicative", tower.format(a) + " ; " + tower.format(b));
      }
      if ((fa == fb) != tower.eq(a, b)) {
        fail("injective", tower.format(a) + " ; " + tower.format(b));
      }
    } catch (const InvariantViolation& e) {
      fail("evaluation", e.what());
    } catch (const DivisionByZero& e) {
      fail("evaluation", e.what());
    }
  }
  return r;
}

bool ImageReport::passed_at(std::size_t level) const {
  for (const auto& m : levels) {
    if (m.level == level) return m.relabeling.has_value();
  }
  return false;
}

bool ImageReport::passed() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelMatch& m) { return m.relabeling.has_value(); });
}

ImageReport verify_image(const PartialEmbedding& f, const Tower& tower, const Presentation& target) {
  const GroundTruth g = ground_truth_iso(target);
  ImageReport r;
  for (std::size_t s = 0; s < f.levels_done(); ++s) {
    const TowerElem vx = g.value(f.images[s].x), vy = g.value(f.images[s].y);
    LevelMatch m{s, std::nullopt};
    for (RelabelChoice c = 0; c < 6 && !m.relabeling; ++c) {
      auto [ex, ey] = apply_relabeling(tower, c, g.sigma.x.at(s), g.sigma.y.at(s));
      if (tower.eq(vx, ex) && tower.eq(vy, ey)) m.relabeling = c;
    }
    r.levels.push_back(m);
  }
  return r;
}

std::string iso_report(const Tower& tower, const Presentation& target, const SearchBudget& budget,
                       const PartialEmbedding& f, const HomReport* hom, const ImageReport* image) {
  std::ostringstream os;
  os << "# iso-report\n";
  os << "primes: [";
  for (std::size_t i = 0; i < tower.depth(); ++i) os << (i ? "," : "") << tower.prime(i);
  os << "]\n";
  os << "target: " << (target.is_scrambled() ? "scrambled" : "canonical") << "\n";
  os << "spec: " << target.spec().describe() << "\n";
  os << "budget: max_codes=" << budget.max_codes << " max_steps=" << budget.max_steps << "\n";
  os << "levels: " << f.levels_done() << "\n";
  os << "zero: " << target.zero() << "\none: " << target.one() << "\n";
  for (std::size_t s = 0; s < f.levels_done(); ++s) {
    const auto& img = f.images[s];
    os << "level " << s << ": p=" << tower.prime(s) << " rational=";
    for (std::size_t k = 0; k < img.rational.size(); ++k) {
      os << (k ? "," : "") << "(" << img.rational[k].first << "," << img.rational[k].second << ")";
    }
    os << " image=(" << img.x << "," << img.y << ")";
    if (img.forced) {
      os << " forced";
    } else {
      os << " pairs_tried=" << img.pairs_tried;
    }
    os << "\n";
  }
  if (hom) {
    os << "verify_hom: samples=" << hom->samples << " checks=" << hom->checks
       << " failures=" << hom->failures.size() << "\n";
    for (const auto& fl : hom->failures) {
      os << "  failure sample=" << fl.sample << " check=" << fl.check << " " << fl.detail << "\n";
    }
  }
  if (image) {
    for (const auto& m : image->levels) {
      os << "verify_image level " << m.level << ": ";
      if (m.relabeling) {
        os << "relabeling " << *m.relabeling << "\n";
      } else {
        os << "no relabeling matches\n";
      }
    }
  }
  return os.str();
}

}  // namespace fermat
