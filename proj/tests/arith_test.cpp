#include <gtest/gtest.h>

#include <chrono>
#include <numeric>
#include <thread>

#include "fermat/arith.hpp"
#include "fermat/error.hpp"

namespace fermat {
namespace {

// Independent oracle: plain trial division.
bool trial_division_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(IsPrime, SmallValues) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(2304));
  EXPECT_TRUE(is_prime(2309));
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (unsigned long n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(Nat(n)), trial_division_prime(n)) << n;
  }
}

TEST(IsPrime, StrongPseudoprimesAreRejected) {
  // Strong pseudoprimes to several small bases.
  EXPECT_FALSE(is_prime(Nat("3215031751")));
  EXPECT_FALSE(is_prime(Nat("3825123056546413051")));
  EXPECT_FALSE(is_prime(Nat("318665857834031151167461")));
  // Carmichael numbers.
  EXPECT_FALSE(is_prime(561));
  EXPECT_FALSE(is_prime(Nat("41041")));
}

TEST(IsPrime, LargeKnownValues) {
  EXPECT_TRUE(is_prime(Nat("18446744073709551557")));  // largest prime below 2^64
  EXPECT_TRUE(is_prime(Nat("170141183460469231731687303715884105727")));  // 2^127 - 1
  EXPECT_FALSE(is_prime(Nat("170141183460469231731687303715884105729")));
}

TEST(NextPrime, Examples) {
  EXPECT_EQ(next_prime(4), 5);
  EXPECT_EQ(next_prime(2304), 2309);
  EXPECT_EQ(next_prime(2), 3);
  EXPECT_EQ(next_prime(0), 2);
}

TEST(NextPrime, NoPrimeSkipped) {
  for (unsigned long n = 0; n < 3000; n += 7) {
    const Nat p = next_prime(n);
    ASSERT_GT(p, n);
    ASSERT_TRUE(trial_division_prime(p.get_ui()));
    for (unsigned long m = n + 1; m < p.get_ui(); ++m) ASSERT_FALSE(trial_division_prime(m));
  }
}

TEST(Genus, Formula) {
  EXPECT_EQ(genus(5), 6);
  EXPECT_EQ(genus(3), 1);
  EXPECT_EQ(genus(4), 3);
  EXPECT_EQ(genus(1), 0);
  EXPECT_THROW(genus(0), PreconditionError);
}

TEST(CoverThreshold, Formula) {
  EXPECT_EQ(cover_threshold(6), 2304);
  EXPECT_EQ(cover_threshold(2), 256);
  EXPECT_THROW(cover_threshold(1), PreconditionError);
}

TEST(Totient, Examples) {
  EXPECT_EQ(totient(1), 1);
  EXPECT_EQ(totient(12), 4);
  EXPECT_EQ(totient(2309), 2308);
  EXPECT_THROW(totient(0), PreconditionError);
}

TEST(Totient, AgreesWithGcdCount) {
  for (unsigned long n = 1; n < 400; ++n) {
    unsigned long count = 0;
    for (unsigned long k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
    ASSERT_EQ(totient(n), count) << n;
  }
}

// phi(n)^2 >= n fails only at n = 2 and n = 6.
TEST(Totient, SquareRootEstimate) {
  for (unsigned long n = 1; n < 5000; ++n) {
    const Nat t = totient(n);
    if (n == 2 || n == 6) {
      EXPECT_LT(t * t, n) << n;
    } else {
      ASSERT_GE(t * t, n) << n;
    }
  }
}

TEST(PrimeSchedule, FirstEntries) {
  PrimeSchedule s;
  EXPECT_EQ(s.at(0), 5);
  EXPECT_EQ(schedule_floor(5), 2304);
  EXPECT_EQ(s.at(1), 2309);
  EXPECT_EQ(prime_schedule(1), 2309);
}

TEST(PrimeSchedule, RecurrenceAndThresholds) {
  PrimeSchedule s;
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    const Nat p = s.at(i), q = s.at(i + 1);
    EXPECT_TRUE(is_prime(q));
    EXPECT_GT(q, p);
    EXPECT_EQ(q, next_prime(schedule_floor(p)));
    EXPECT_GT(q, cover_threshold(genus(p)));
    // (4 (p-1)(p-2))^2 = 64 g^2 exactly.
    EXPECT_EQ(schedule_floor(p), cover_threshold(genus(p)));
  }
}

TEST(PrimeSchedule, BitBudget) {
  PrimeSchedule small(40);
  EXPECT_EQ(small.at(1), 2309);
  EXPECT_THROW(small.at(2), ResourceError);
}

TEST(PrimeSchedule, ConcurrentReaders) {
  PrimeSchedule s;
  std::vector<std::thread> ts;
  std::vector<Nat> out(4);
  for (int t = 0; t < 4; ++t) ts.emplace_back([&, t] { out[t] = s.at(2); });
  for (auto& t : ts) t.join();
  for (const auto& v : out) EXPECT_EQ(v, out[0]);
}

}  // namespace
}  // namespace fermat
