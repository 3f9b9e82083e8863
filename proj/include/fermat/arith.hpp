#pragma once

#include <cstddef>
#include <mutex>
#include <vector>

#include <gmpxx.h>

namespace fermat {

/// Arbitrary-precision integers. `Nat` is used where the value is known to be
/// non-negative; GMP provides the representation.
using Integer = mpz_class;
using Nat = mpz_class;
/// Canonical arbitrary-precision rationals (reduced, positive denominator).
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Deterministic primality. Below 3.3e24 a proven Miller-Rabin witness set is
/// used; above it every base up to 2 ln(n)^2 is tried (Bach's bound, which is
/// exact under the generalized Riemann hypothesis).
bool is_prime(const Nat& n);

/// Least prime strictly greater than `n`.
Nat next_prime(const Nat& n);

/// Genus (N-1)(N-2)/2 of the smooth plane curve of degree N. Requires N >= 1.
Nat genus(const Nat& n);

/// 64 g^2: above this a prime-exponent Fermat curve has no cover relation with
/// a curve of genus g. Requires g >= 2.
Nat cover_threshold(const Nat& g);

/// Euler's totient by trial-division factorization. Requires n >= 1.
Nat totient(const Nat& n);

/// p_0 = 5, p_{i+1} = least prime above (4 (p_i - 1)(p_i - 2))^2.
///
/// Entries are memoized; extension is serialized by an internal mutex so a
/// schedule may be shared between threads. Computing an entry whose
/// predecessor square exceeds `max_bits` raises ResourceError.
class PrimeSchedule {
 public:
  static constexpr std::size_t kDefaultMaxBits = 256;

  explicit PrimeSchedule(std::size_t max_bits = kDefaultMaxBits);

  Nat at(std::size_t i);
  std::size_t max_bits() const { return max_bits_; }

 private:
  std::size_t max_bits_;
  std::mutex mu_;
  std::vector<Nat> primes_;
};

/// The square (4 (p-1)(p-2))^2 whose successor prime is the next schedule entry.
Nat schedule_floor(const Nat& p);

/// Entry `i` of a process-wide schedule with the default bit budget.
Nat prime_schedule(std::size_t i);

}  // namespace fermat
