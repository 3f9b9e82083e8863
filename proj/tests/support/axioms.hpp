#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "fermat/sampling.hpp"
#include "fermat/tower.hpp"

namespace fermat::testing {

enum Axiom : std::size_t {
  kAddAssoc,
  kAddComm,
  kAddIdentity,
  kAddInverse,
  kMulAssoc,
  kMulComm,
  kMulIdentity,
  kMulInverse,
  kDistrib,
  kAxiomCount
};

inline const char* axiom_name(std::size_t a) {
  static const char* names[] = {"add-assoc", "add-comm", "add-identity", "add-inverse", "mul-assoc",
                                "mul-comm",  "mul-identity", "mul-inverse", "distrib"};
  return names[a];
}

struct AxiomTally {
  std::array<std::size_t, kAxiomCount> checks{};
  std::array<std::size_t, kAxiomCount> failures{};

  std::size_t total_failures() const {
    std::size_t n = 0;
    for (auto f : failures) n += f;
    return n;
  }
  std::size_t min_checks() const {
    std::size_t n = checks[0];
    for (auto c : checks) n = c < n ? c : n;
    return n;
  }
};

// Each round draws a, b, c at the top level and checks every axiom once.
// Results are compared structurally, which is the equality the tower promises.
inline AxiomTally check_field_axioms(const Tower& t, std::size_t rounds, std::uint64_t seed) {
  ElementSampler s(t, seed);
  const std::size_t top = t.depth();
  AxiomTally tally;
  auto record = [&](Axiom ax, bool ok) {
    ++tally.checks[ax];
    if (!ok) ++tally.failures[ax];
  };
  const TowerElem zero = t.zero(top), one = t.one(top);
  for (std::size_t r = 0; r < rounds; ++r) {
    const TowerElem a = t.coerce(s.element(top), top);
    const TowerElem b = t.coerce(s.element(top), top);
    const TowerElem c = t.coerce(s.element(top), top);
    record(kAddAssoc, t.add(t.add(a, b), c) == t.add(a, t.add(b, c)));
    record(kAddComm, t.add(a, b) == t.add(b, a));
    record(kAddIdentity, t.add(a, zero) == a);
    record(kAddInverse, t.add(a, t.neg(a)) == zero);
    record(kMulAssoc, t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
    record(kMulComm, t.mul(a, b) == t.mul(b, a));
    record(kMulIdentity, t.mul(a, one) == a);
    record(kDistrib, t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
    if (a.is_zero()) {
      // Draw again so the inverse axiom still gets one check per round.
      const TowerElem d = t.coerce(s.nonzero_element(top), top);
      record(kMulInverse, t.mul(d, t.inv(d)) == one);
    } else {
      record(kMulInverse, t.mul(a, t.inv(a)) == one);
    }
  }
  return tally;
}

}  // namespace fermat::testing
