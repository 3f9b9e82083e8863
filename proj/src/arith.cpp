#include "fermat/arith.hpp"

#include <array>
#include <cmath>

#include "fermat/error.hpp"

namespace fermat {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97};

// n odd, n > 3; d * 2^s = n - 1 with d odd.
bool strong_probable_prime(const Nat& n, const Nat& d, unsigned long s, const Nat& base) {
  Nat a = base % n;
  if (a == 0) return true;
  Nat x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Nat n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Jaeschke / Sorenson-Webster: the first 13 primes are a complete witness
// set for n < 3317044064679887385961981.
const Nat& proven_witness_limit() {
  static const Nat limit("3317044064679887385961981");
  return limit;
}

}  // namespace

bool is_prime(const Nat& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 97 * 97) return true;

  Nat d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // Base 2 first: rejects nearly every composite cheaply.
  if (!strong_probable_prime(n, d, s, 2)) return false;

  if (n < proven_witness_limit()) {
    for (std::size_t i = 1; i < 13; ++i) {
      if (!strong_probable_prime(n, d, s, kSmallPrimes[i])) return false;
    }
    return true;
  }

  // ln n from the bit length is exact enough for an upper bound on the bases.
  const double ln_n = static_cast<double>(mpz_sizeinbase(n.get_mpz_t(), 2)) * std::log(2.0);
  const auto limit = static_cast<unsigned long>(std::ceil(2.0 * ln_n * ln_n));
  for (unsigned long a = 3; a <= limit; ++a) {
    if (!strong_probable_prime(n, d, s, a)) return false;
  }
  return true;
}

Nat next_prime(const Nat& n) {
  if (n < 2) return 2;
  Nat c = n + 1;
  if (c % 2 == 0 && c != 2) c += 1;
  while (!is_prime(c)) c += 2;
  return c;
}

Nat genus(const Nat& n) {
  if (n < 1) throw PreconditionError("genus: degree must be >= 1");
  return (n - 1) * (n - 2) / 2;
}

Nat cover_threshold(const Nat& g) {
  if (g < 2) throw PreconditionError("cover_threshold: genus must be >= 2");
  return 64 * g * g;
}

Nat totient(const Nat& n) {
  if (n < 1) throw PreconditionError("totient: argument must be >= 1");
  Nat rest = n;
  Nat result = n;
  for (Nat p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

Nat schedule_floor(const Nat& p) {
  Nat base = 4 * (p - 1) * (p - 2);
  return base * base;
}

PrimeSchedule::PrimeSchedule(std::size_t max_bits) : max_bits_(max_bits), primes_{Nat(5)} {}

Nat PrimeSchedule::at(std::size_t i) {
  std::lock_guard lock(mu_);
  while (primes_.size() <= i) {
    const Nat floor = schedule_floor(primes_.back());
    const std::size_t bits = mpz_sizeinbase(floor.get_mpz_t(), 2);
    if (bits > max_bits_) {
      throw ResourceError("prime schedule entry " + std::to_string(primes_.size()) +
                          " needs " + std::to_string(bits) + " bits; budget is " +
                          std::to_string(max_bits_));
    }
    primes_.push_back(next_prime(floor));
  }
  return primes_[i];
}

Nat prime_schedule(std::size_t i) {
  static PrimeSchedule schedule;
  return schedule.at(i);
}

}  // namespace fermat
