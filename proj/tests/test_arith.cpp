#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "oracles.hpp"
#include "steinitz/arith.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/verify.hpp"

using namespace steinitz;

TEST(Kronecker, KnownValues) {
  EXPECT_EQ(kronecker(-23, 13), 1);
  EXPECT_EQ(kronecker(-23, 59), 1);
  EXPECT_EQ(kronecker(-23, 7), -1);
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(-4, 5), 1);
  for (Int a = -50; a <= 50; ++a) EXPECT_EQ(kronecker(a, 1), 1);
  EXPECT_THROW(kronecker(5, 0), UndefinedInput);
}

TEST(Kronecker, MatchesEulerCriterionOracle) {
  for (Int a = -100; a <= 100; ++a)
    for (Int n = -100; n <= 100; ++n) {
      if (n == 0) continue;
      ASSERT_EQ(kronecker(a, n), oracle::kronecker(a, n)) << "a=" << a << " n=" << n;
    }
}

TEST(Kronecker, MultiplicativeInTheBottomArgument) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> big(-1'000'000, 1'000'000);
  std::uniform_int_distribution<Int> small(1, 3000);
  for (int i = 0; i < 5000; ++i) {
    const Int a = big(rng), m = small(rng), n = small(rng);
    ASSERT_EQ(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
  }
}

TEST(Primality, KnownValues) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(561));
  EXPECT_TRUE(is_prime(Int{1'000'000'007}));
  EXPECT_TRUE(is_prime(std::uint64_t{18446744073709551557ULL}));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(std::uint64_t{3215031751ULL}));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(std::uint64_t{3825123056546413051ULL}));  // strong pseudoprime to the first 9 prime bases
  EXPECT_THROW(is_prime(Int{-7}), InvalidInput);
}

TEST(Primality, MatchesTrialDivision) {
  for (Int n = 0; n <= 100'000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> dist(1'000'000'000, 1'000'010'000);
  for (int i = 0; i < 300; ++i) {
    const Int n = dist(rng);
    ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  }
}

TEST(LiftedPowerCongruence, Examples) {
  EXPECT_TRUE(lifted_power_congruence(5, 2, 3, 9));
  EXPECT_TRUE(lifted_power_congruence(4, 1, 3, 3));
  EXPECT_TRUE(lifted_power_congruence(17, 17, 6, 12));
  EXPECT_THROW(lifted_power_congruence(5, 3, 3, 9), PreconditionViolation);
  EXPECT_THROW(lifted_power_congruence(5, 2, 3, 2), PreconditionViolation);
  EXPECT_THROW(lifted_power_congruence(5, 2, 0, 1), PreconditionViolation);
}

// Exact big-integer evaluation of x^n - y^n against the modular computation.
TEST(LiftedPowerCongruence, AgreesWithExactArithmetic) {
  using boost::multiprecision::cpp_int;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto inst = detail::random_congruence_instance(rng);
    const cpp_int diff = boost::multiprecision::pow(cpp_int(inst.x), static_cast<unsigned>(inst.n)) -
                         boost::multiprecision::pow(cpp_int(inst.y), static_cast<unsigned>(inst.n));
    const bool exact = diff % (cpp_int(inst.m) * inst.n) == 0;
    ASSERT_TRUE(exact) << inst.x << " " << inst.y << " " << inst.m << " " << inst.n;
    ASSERT_EQ(lifted_power_congruence(inst.x, inst.y, inst.m, inst.n), exact);
  }
}

TEST(LiftedPowerCongruence, GeneratorRespectsHypotheses) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10'000; ++i) {
    const auto inst = detail::random_congruence_instance(rng);
    ASSERT_EQ(oracle::md(inst.x - inst.y, inst.m), 0);
    for (Int q : oracle::factor(inst.n)) ASSERT_EQ(inst.m % q, 0);
    ASSERT_LE(std::abs(inst.x), 1'000'000);
    ASSERT_LE(inst.n, 1000);
  }
}

TEST(PrimeStream, Examples) {
  PrimeStream s;
  s.modulus = 3;
  s.residues = {1};
  s.discriminant = -23;
  s.lower = 2;
  s.upper = 20;
  EXPECT_EQ(prime_stream(s), std::vector<Int>{13});

  s.modulus = 1;
  s.discriminant = -4;
  s.upper = 10;
  EXPECT_EQ(prime_stream(s), std::vector<Int>{5});

  s.lower = 30;
  s.upper = 20;
  EXPECT_TRUE(prime_stream(s).empty());
}

TEST(PrimeStream, MatchesTrialDivisionFilter) {
  for (Int D : {-23, -47, -20, -4, -3, -163}) {
    for (Int M : {1, 3, 4, 9, 12, 27}) {
      PrimeStream s;
      s.modulus = M;
      s.residues = {1};
      s.discriminant = D;
      s.lower = 2;
      s.upper = 20'000;
      const auto got = prime_stream(s);
      const auto want = oracle::split_primes(D, M, 2, 20'000);
      ASSERT_EQ(std::vector<Int>(want.begin(), want.end()), got) << "D=" << D << " M=" << M;
    }
  }
}

TEST(PrimeStream, InvariantsOnRandomWindows) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<Int> lo_dist(2, 100'000);
  std::uniform_int_distribution<Int> len_dist(0, 5000);
  std::uniform_int_distribution<Int> m_dist(1, 40);
  const std::vector<Int> discs{-3, -4, -7, -8, -15, -20, -23, -47, -71, -163};
  std::uniform_int_distribution<std::size_t> d_pick(0, discs.size() - 1);
  for (int i = 0; i < 200; ++i) {
    PrimeStream s;
    s.modulus = m_dist(rng);
    s.discriminant = discs[d_pick(rng)];
    s.residues.clear();
    for (Int r = 1; r <= s.modulus; r += 2) s.residues.insert(r % s.modulus);
    s.lower = lo_dist(rng);
    s.upper = s.lower + len_dist(rng);
    Int prev = 0;
    std::size_t count = 0;
    for (Int p : prime_stream(s)) {
      ASSERT_TRUE(oracle::is_prime(p));
      ASSERT_GT(p, prev);
      ASSERT_NE(s.modulus % p, 0);
      ASSERT_NE(s.discriminant % p, 0);
      ASSERT_TRUE(s.residues.contains(p % s.modulus));
      ASSERT_EQ(oracle::kronecker(s.discriminant, p), 1);
      prev = p;
      ++count;
    }
    std::size_t expected = 0;
    for (Int p = s.lower; p <= s.upper; ++p)
      if (oracle::is_prime(p) && s.modulus % p != 0 && s.discriminant % p != 0 &&
          s.residues.contains(p % s.modulus) && oracle::kronecker(s.discriminant, p) == 1)
        ++expected;
    ASSERT_EQ(count, expected);
  }
}

TEST(ModularArithmetic, PowmodAndInverse) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Int> dist(-1'000'000'000, 1'000'000'000);
  std::uniform_int_distribution<Int> mdist(2, 1'000'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Int a = dist(rng), m = mdist(rng);
    const auto e = static_cast<std::uint64_t>(mdist(rng));
    ASSERT_EQ(powmod(a, e, m), oracle::pow_mod(a, static_cast<Int>(e), m));
    if (auto inv = invmod(a, m)) {
      ASSERT_EQ(mulmod(mod(a, m), *inv, m), 1 % m);
    } else {
      ASSERT_NE(std::gcd(mod(a, m), m), 1);
    }
  }
}

TEST(ModularArithmetic, SquareRootsModPrime) {
  for (Int p : {3, 5, 7, 13, 17, 41, 97, 257, 65537, 1'000'000'007}) {
    for (Int a = 0; a < 60; ++a) {
      auto r = sqrt_mod_prime(a, p);
      if (a % p != 0 && oracle::kronecker(a, p) == -1) {
        EXPECT_FALSE(r.has_value());
      } else {
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(mulmod(*r, *r, p), mod(a, p));
      }
    }
  }
}

TEST(CheckedArithmetic, OverflowIsReported) {
  EXPECT_THROW(checked_mul(Int{1} << 40, Int{1} << 40), Overflow);
  EXPECT_THROW(ipow(10, 30), Overflow);
  EXPECT_EQ(checked_mul(-3, 7), -21);
}

TEST(Divisors, MatchFactorization) {
  for (Int n = 1; n <= 2000; ++n) {
    auto divs = divisors(n);
    Int count = 0;
    for (Int k = 1; k <= n; ++k)
      if (n % k == 0) ++count;
    ASSERT_EQ(static_cast<Int>(divs.size()), count);
    ASSERT_TRUE(std::is_sorted(divs.begin(), divs.end()));
    ASSERT_EQ(is_squarefree(n), oracle::squarefree(n));
  }
}
