#include "capitulab/arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace capitulab;
using namespace capitulab::arith;

namespace {

bool naive_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned long naive_order(unsigned long a, unsigned long n) {
  unsigned long x = a % n, k = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++k;
  }
  return k;
}

}  // namespace

TEST(Arith, IsPrimeExamples) {
  EXPECT_TRUE(is_prime(449));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(2817));
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(-7));
  EXPECT_TRUE(is_prime(Integer("18446744073709551557")));  // largest prime below 2^64
  EXPECT_FALSE(is_prime(Integer("3825123056546413051")));  // strong pseudoprime to bases 2..23
  EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727")));
}

TEST(Arith, IsPrimeMatchesTrialDivision) {
  for (unsigned long n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(Integer(n)), naive_prime(n)) << n;
}

TEST(Arith, FactorizeExamples) {
  const auto f = factorize(2817);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0], std::make_pair(Integer(3), 2u));
  EXPECT_EQ(f.factors[1], std::make_pair(Integer(313), 1u));
  EXPECT_TRUE(factorize(1).factors.empty());
  const auto g = factorize(32009);
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].first, 32009);
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Arith, FactorizeReconstructsRandomInputs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const Integer n(static_cast<unsigned long>(1 + rng() % 999999999));
    const auto f = factorize(n);
    EXPECT_EQ(f.product(), n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      EXPECT_TRUE(is_prime(f.factors[i].first));
      if (i) {
        EXPECT_LT(f.factors[i - 1].first, f.factors[i].first);
      }
    }
  }
}

TEST(Arith, FactorizeLargeSemiprime) {
  const Integer p("1000000007"), q("998244353"), r("4294967311");
  const auto f = factorize(p * q * r * r);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0].first, q);
  EXPECT_EQ(f.factors[1].first, p);
  EXPECT_EQ(f.factors[2], std::make_pair(r, 2u));
}

TEST(Arith, KroneckerExamples) {
  EXPECT_EQ(kronecker(32009, 19), -1);
  EXPECT_EQ(kronecker(17, 1), 1);
  EXPECT_EQ(kronecker(5, 5), 0);
  EXPECT_EQ(kronecker(1129, 13), -1);
}

TEST(Arith, KroneckerIsEulerCriterionForOddPrimes) {
  for (std::uint64_t ell : primes_in_range(3, 400))
    for (long a = -50; a <= 50; ++a) {
      const Integer L(static_cast<unsigned long>(ell));
      const Integer e = pow_mod(Integer(a), (L - 1) / 2, L);
      const int expected = mod(Integer(a), L) == 0 ? 0 : (e == 1 ? 1 : -1);
      ASSERT_EQ(kronecker(a, L), expected) << a << " " << ell;
    }
}

TEST(Arith, KroneckerMultiplicative) {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 1000) {
    const Integer a(static_cast<long>(rng() % 2000) - 1000), b(static_cast<long>(rng() % 2000) - 1000);
    const Integer n(static_cast<unsigned long>(1 + rng() % 5000));
    if (gcd(a * b, n) != 1) continue;
    EXPECT_EQ(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    const Integer m(static_cast<unsigned long>(1 + rng() % 5000));
    if (gcd(a, m) != 1) continue;
    EXPECT_EQ(kronecker(a, n * m), kronecker(a, n) * kronecker(a, m));
    ++checked;
  }
}

TEST(Arith, MultOrderExamples) {
  EXPECT_EQ(mult_order(2, 3), 2);
  EXPECT_EQ(mult_order(7, 3), 1);
  EXPECT_EQ(mult_order(5, 1), 1);
  EXPECT_THROW(mult_order(6, 9), DomainError);
}

TEST(Arith, MultOrderDividesCarmichaelExhaustively) {
  for (unsigned long n = 1; n < 500; ++n) {
    const Integer lam = carmichael(n);
    unsigned long lam_naive = 1;
    for (unsigned long a = 1; a < std::max(n, 2UL); ++a) {
      if (std::gcd(a, n) != 1) continue;
      const unsigned long o = naive_order(a, n);
      lam_naive = std::lcm(lam_naive, o);
      ASSERT_EQ(mult_order(a, n), o) << a << " mod " << n;
      ASSERT_TRUE(mpz_divisible_p(lam.get_mpz_t(), Integer(o).get_mpz_t()));
    }
    ASSERT_EQ(lam, lam_naive) << n;
  }
}

TEST(Arith, EulerPhiMatchesCount) {
  for (unsigned long n = 1; n < 1000; ++n) {
    unsigned long c = 0;
    for (unsigned long a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
    ASSERT_EQ(euler_phi(n), c) << n;
  }
}

TEST(Arith, PrimitiveRootExamples) {
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_EQ(primitive_root(5), 2);
  EXPECT_EQ(primitive_root(3), 2);
  EXPECT_THROW(primitive_root(15), DomainError);
  for (std::uint64_t ell : primes_in_range(3, 2000)) {
    const Integer g = primitive_root(Integer(static_cast<unsigned long>(ell)));
    EXPECT_EQ(mult_order(g, Integer(static_cast<unsigned long>(ell))), ell - 1);
    for (unsigned long h = 2; h < g.get_ui(); ++h) EXPECT_LT(naive_order(h, ell), ell - 1);
  }
}

TEST(Arith, CoreIsRadical) {
  EXPECT_EQ(core(12), 6);
  EXPECT_EQ(core(1), 1);
  EXPECT_EQ(core(32009), 32009);
  EXPECT_EQ(core(2817), 939);
}

TEST(Arith, SquaresAndRoots) {
  for (unsigned long n = 0; n < 5000; ++n) {
    const unsigned long r = isqrt(n).get_ui();
    ASSERT_LE(r * r, n);
    ASSERT_GT((r + 1) * (r + 1), n);
    Integer root;
    ASSERT_EQ(is_square(n, &root), r * r == n);
  }
  EXPECT_TRUE(is_squarefree(1129));
  EXPECT_FALSE(is_squarefree(2817));
  EXPECT_FALSE(is_square(-4));
}

TEST(Arith, ValuationGcdInverse) {
  EXPECT_EQ(valuation(2817, 3), 2u);
  EXPECT_EQ(valuation(292, 2), 2u);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(lcm(4, 6), 12);
  EXPECT_EQ(mod(-7, 5), 3);
  EXPECT_EQ(inverse_mod(3, 5), 2);
  EXPECT_THROW(inverse_mod(4, 8), DomainError);
  EXPECT_EQ(pow_mod(2, 10, 1000), 24);
  EXPECT_EQ(pow(3, 9), 19683);
}

TEST(Arith, Divisors) {
  EXPECT_EQ(divisors(12), (std::vector<Integer>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(prime_divisors(2817), (std::vector<Integer>{3, 313}));
  EXPECT_EQ(divisors(1), std::vector<Integer>{1});
}

TEST(Arith, CrtSolvesSystems) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::vector<Integer> m{7, 9, 11 * 13};
    std::vector<Integer> r;
    for (const auto& x : m) r.push_back(Integer(static_cast<unsigned long>(rng() % x.get_ui())));
    const Integer s = crt(r, m);
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(mod(s, m[i]), r[i]);
    EXPECT_LT(s, 7 * 9 * 143);
  }
  EXPECT_THROW(crt({1, 2}, {4, 6}), DomainError);
}

TEST(Arith, SegmentedSieveMatchesTrialDivision) {
  const auto ps = primes_in_range(990000, 1010000);
  std::size_t k = 0;
  for (std::uint64_t n = 990000; n <= 1010000; ++n)
    if (naive_prime(n)) {
      ASSERT_LT(k, ps.size());
      ASSERT_EQ(ps[k++], n);
    }
  EXPECT_EQ(k, ps.size());
  EXPECT_TRUE(primes_in_range(24, 28).empty());
}
