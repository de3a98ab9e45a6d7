#include "capitulab/arith.hpp"
#include "capitulab/cubf.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace capitulab;
using namespace capitulab::cubf;

namespace {

std::string strip(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// Conductors 9^e p_1...p_k with distinct p_i = 1 mod 3, by trial division.
bool naive_conductor(long f) {
  if (f < 7) return false;
  long e = 0;
  while (f % 3 == 0) {
    f /= 3;
    ++e;
  }
  if (e != 0 && e != 2) return false;
  for (long p = 2; p * p <= f; ++p)
    if (f % p == 0) {
      f /= p;
      if (f % p == 0 || p % 3 != 1) return false;
    }
  return f == 1 || f % 3 == 1;
}

Integer disc(const poly::Poly& g) {
  // x^3 + a x^2 + b x + c
  const Integer &c = g[0], &b = g[1], &a = g[2];
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

bool has_integer_root(const poly::Poly& g) {
  // Trigonometric real roots, then an exact check near each.
  const double a = g[2].get_d(), b = g[1].get_d(), c = g[0].get_d();
  const double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
  const double r = 2 * std::sqrt(-p / 3);
  for (int k = 0; k < 3; ++k) {
    const double t = r * std::cos(std::acos(std::clamp(3 * q / (p * r), -1.0, 1.0)) / 3 - 2 * M_PI * k / 3) - a / 3;
    for (long d = -2; d <= 2; ++d)
      if (poly::eval(g, Integer(static_cast<long>(std::llround(t)) + d)) == 0) return true;
  }
  return false;
}

bool root_mod(const poly::Poly& g, long ell) {
  for (long x = 0; x < ell; ++x)
    if (arith::mod(poly::eval(g, Integer(x)), Integer(ell)) == 0) return true;
  return false;
}

// Minimal polynomial of sum_{j in H} zeta^j with H the subgroup of index deg, numerically.
poly::Poly numeric_period_poly(long ell, unsigned long deg) {
  const long g = arith::primitive_root(Integer(ell)).get_si();
  const long len = (ell - 1) / static_cast<long>(deg);
  std::vector<std::complex<double>> eta(deg);
  for (unsigned long i = 0; i < deg; ++i) {
    long x = arith::pow_mod(Integer(g), Integer(i), Integer(ell)).get_si();
    const long step = arith::pow_mod(Integer(g), Integer(deg), Integer(ell)).get_si();
    for (long j = 0; j < len; ++j) {
      eta[i] += std::polar(1.0, 2 * M_PI * static_cast<double>(x) / static_cast<double>(ell));
      x = x * step % ell;
    }
  }
  std::vector<std::complex<double>> c{1.0};
  for (const auto& e : eta) {
    std::vector<std::complex<double>> n(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= e * c[k];
    }
    c = n;
  }
  poly::Poly out;
  for (const auto& z : c) {
    EXPECT_NEAR(z.imag(), 0.0, 1e-6);
    EXPECT_NEAR(z.real(), std::round(z.real()), 1e-6);
    out.push_back(Integer(static_cast<long>(std::llround(z.real()))));
  }
  return out;
}

const std::vector<std::pair<long, std::string>> kListed{
    {163, "x^3+x^2-54*x-169"},          {277, "x^3+x^2-92*x+236"},
    {313, "x^3+x^2-104*x+371"},         {349, "x^3+x^2-116*x-517"},
    {397, "x^3+x^2-132*x-544"},         {1261, "x^3+x^2-420*x-1728"},
    {1567, "x^3+x^2-522*x-4759"},       {1777, "x^3+x^2-592*x+724"},
    {2817, "x^3-939*x+6886"},           {4297, "x^3+x^2-1432*x+20371"},
    {5409, "x^3-1803*x+29449"},         {7687, "x^3+x^2-2562*x-48969"},
    {8563, "x^3+x^2-2854*x+57721"},     {9709, "x^3+x^2-3236*x+21216"},
    {9721, "x^3+x^2-3240*x-39244"},     {9891, "x^3-3297*x+70336"},
    {9961, "x^3+x^2-3320*x-74523"},     {10513, "x^3+x^2-3504*x-80989"},
    {20887, "x^3+x^2-6962*x-225889"},   {31923, "x^3-10641*x+227008"},
    {48769, "x^3+x^2-16256*x-7225"},    {70897, "x^3+x^2-23632*x-1389056"},
    {80947, "x^3+x^2-26982*x+1696889"}, {98479, "x^3+x^2-32826*x-1940401"},
    {98581, "x^3+x^2-32860*x+1453157"}, {99133, "x^3+x^2-33044*x+117491"},
    {100807, "x^3+x^2-33602*x+321089"}, {351063, "x^3-117021*x-15407765"},
    {357229, "x^3+x^2-119076*x+15228540"}, {492517, "x^3+x^2-164172*x-24479919"},
    {552763, "x^3+x^2-184254*x-27842877"}};

}  // namespace

TEST(CubF, ConductorExamples) {
  EXPECT_EQ(enumerate_conductors(7, 20), (std::vector<Integer>{7, 9, 13, 19}));
  const auto c = enumerate_conductors(150, 170);
  EXPECT_NE(std::find(c.begin(), c.end(), 163), c.end());
  EXPECT_FALSE(is_cyclic_cubic_conductor(15));
  EXPECT_FALSE(is_cyclic_cubic_conductor(27));
  EXPECT_TRUE(is_cyclic_cubic_conductor(63));
  EXPECT_TRUE(is_cyclic_cubic_conductor(9));
}

TEST(CubF, ConductorsMatchTrialDivision) {
  const auto all = enumerate_conductors(1, 20000);
  std::size_t k = 0;
  for (long f = 1; f <= 20000; ++f) {
    ASSERT_EQ(is_cyclic_cubic_conductor(f), naive_conductor(f)) << f;
    if (naive_conductor(f)) {
      ASSERT_LT(k, all.size());
      ASSERT_EQ(all[k++], f);
    }
  }
  EXPECT_EQ(k, all.size());
}

TEST(CubF, DefiningPolynomialExamples) {
  const auto a = defining_polynomial(163);
  EXPECT_EQ(a.poly_str(), "x^3 + x^2 - 54*x - 169");
  EXPECT_EQ(a.a, -25);
  EXPECT_EQ(a.b, 1);
  const auto b = defining_polynomial(2817);
  EXPECT_EQ(b.poly_str(), "x^3 - 939*x + 6886");
  EXPECT_EQ(b.a, -66);
  EXPECT_EQ(b.b, 16);
  EXPECT_EQ(b.h3, 2u);
  EXPECT_EQ(defining_polynomial(7).poly_str(), "x^3 + x^2 - 2*x - 1");
  EXPECT_THROW(defining_polynomial(15), DomainError);
}

TEST(CubF, ListedPolynomialsAreReproduced) {
  for (const auto& [f, expected] : kListed) {
    const auto fields = defining_polynomials(f);
    bool found = false;
    for (const auto& k : fields) found = found || strip(k.poly_str()) == expected;
    EXPECT_TRUE(found) << "f=" << f;
  }
}

TEST(CubF, RepresentationCountMatchesPrimeFactors) {
  // 2^(k-1) fields for k prime factors counting 9 as one.
  for (long f : {7L, 63L, 91L, 1261L, 9709L, 48769L, 100807L, 819L}) {
    const auto fs = arith::prime_divisors(f);
    EXPECT_EQ(defining_polynomials(f).size(), 1u << (fs.size() - 1)) << f;
  }
}

TEST(CubF, PolynomialsAreIrreducibleWithSquareDiscriminant) {
  for (const auto& f : enumerate_conductors(1, 10000))
    for (const auto& k : defining_polynomials(f)) {
      ASSERT_EQ(k.a * k.a + 27 * k.b * k.b, 4 * f);
      ASSERT_EQ(poly::degree(k.poly), 3);
      const Integer D = disc(k.poly);
      ASSERT_TRUE(mpz_divisible_p(D.get_mpz_t(), Integer(f * f).get_mpz_t())) << f;
      ASSERT_TRUE(arith::is_square(D / (f * f))) << f;
      ASSERT_FALSE(has_integer_root(k.poly)) << k.poly_str();
    }
}

TEST(CubF, InertnessMatchesCubicResidueForPrimeConductor) {
  for (const auto& f : enumerate_conductors(7, 400)) {
    if (!arith::is_prime(f)) continue;
    const auto K = defining_polynomial(f);
    for (std::uint64_t ell : arith::primes_in_range(2, 600)) {
      const Integer L(static_cast<unsigned long>(ell));
      if (L == f) continue;
      const bool inert = arith::pow_mod(L, (f - 1) / 3, f) != 1;
      ASSERT_EQ(is_inert(K, L), inert) << "f=" << f << " ell=" << ell;
    }
  }
}

TEST(CubF, InertnessMatchesRootSearch) {
  for (long f : {63L, 91L, 1261L, 2817L, 5409L, 31923L})
    for (const auto& K : defining_polynomials(f)) {
      const Integer D = disc(K.poly);
      for (std::uint64_t ell : arith::primes_in_range(2, 800)) {
        const Integer L(static_cast<unsigned long>(ell));
        if (mpz_divisible_p(D.get_mpz_t(), L.get_mpz_t())) continue;
        ASSERT_EQ(is_inert(K, L), !root_mod(K.poly, static_cast<long>(ell))) << K.poly_str() << " " << ell;
        ASSERT_EQ(has_ell_adic_root(K.poly, L), root_mod(K.poly, static_cast<long>(ell)));
      }
    }
}

TEST(CubF, InertPrimeExamples) {
  const auto a = inert_primes(defining_polynomial(2817), 2, 2, 500);
  EXPECT_NE(std::find(a.begin(), a.end(), 449), a.end());
  for (const auto& ell : a) EXPECT_EQ(arith::mod(ell, 8), 1);
  const auto b = inert_primes(defining_polynomial(313), 7, 1, 100);
  EXPECT_NE(std::find(b.begin(), b.end(), 29), b.end());
  EXPECT_TRUE(inert_primes(defining_polynomial(313), 7, 1, 1).empty());
  const auto c = inert_primes(defining_polynomial(1777), 2, 3, 100, 8);
  EXPECT_NE(std::find(c.begin(), c.end(), 41), c.end());
}

TEST(CubF, GaussianPeriodExamples) {
  EXPECT_EQ(gaussian_period_poly(7, 3), (poly::Poly{-1, -2, 1, 1}));
  EXPECT_EQ(gaussian_period_poly(5, 2), (poly::Poly{-1, 1, 1}));
  EXPECT_EQ(gaussian_period_poly(11, 1), (poly::Poly{1, 1}));
  EXPECT_THROW(gaussian_period_poly(7, 4), DomainError);
}

TEST(CubF, GaussianPeriodsMatchNumericExpansion) {
  for (std::uint64_t ell : arith::primes_in_range(3, 200))
    for (unsigned long deg : {1UL, 2UL, 3UL, 4UL, 6UL}) {
      if ((ell - 1) % deg) continue;
      ASSERT_EQ(gaussian_period_poly(Integer(static_cast<unsigned long>(ell)), deg),
                numeric_period_poly(static_cast<long>(ell), deg))
          << ell << " " << deg;
    }
}

TEST(CubF, CubicPeriodFieldHasPrimeConductor) {
  // The cubic period polynomial of ell = 1 mod 3 defines the field of conductor ell.
  for (std::uint64_t ell : arith::primes_in_range(7, 400)) {
    if (ell % 3 != 1) continue;
    const auto g = gaussian_period_poly(Integer(static_cast<unsigned long>(ell)), 3);
    const Integer D = disc(g);
    const Integer L(static_cast<unsigned long>(ell));
    ASSERT_TRUE(mpz_divisible_p(D.get_mpz_t(), Integer(L * L).get_mpz_t())) << ell;
    Integer c;
    ASSERT_TRUE(arith::is_square(D / (L * L), &c)) << ell;
    // 4 ell = a^2 + 27 c^2
    EXPECT_TRUE(arith::is_square(4 * L - 27 * c * c)) << ell;
  }
}
