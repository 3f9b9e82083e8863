#pragma once

// Arithmetic in a word-size prime field, used to certify coprimality of
// polynomials through a ring homomorphism into F_ell[X].

#include <cstdint>
#include <optional>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

struct ModP {
  std::uint64_t ell;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= ell ? s - ell : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + ell - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (ell <= 0xFFFFFFFFULL) return a * b % ell;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % ell);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Requires a != 0.
  std::uint64_t inv(std::uint64_t a) const;

  /// Image of q, or nothing when ell divides the denominator.
  std::optional<std::uint64_t> reduce(const Rational& q) const;
};

/// Dense polynomial over F_ell, lowest degree first, no trailing zeros.
using ModPoly = std::vector<std::uint64_t>;

/// Degree of gcd(a, b) over F_ell; both inputs nonzero.
long mod_gcd_degree(const ModP& f, ModPoly a, ModPoly b);

}  // namespace fermat
