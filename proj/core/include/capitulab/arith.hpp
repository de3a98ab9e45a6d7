#pragma once

#include "capitulab/common.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace capitulab::arith {

struct Factorization {
  Integer value;
  std::vector<std::pair<Integer, unsigned>> factors;  // strictly increasing primes

  Integer product() const;
  bool operator==(const Factorization&) const = default;
};

bool is_prime(const Integer& n);
Factorization factorize(const Integer& n);
std::vector<Integer> prime_divisors(const Integer& n);
std::vector<Integer> divisors(const Integer& n);  // sorted ascending

int kronecker(const Integer& a, const Integer& n);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer mod(const Integer& a, const Integer& n);  // representative in [0, |n|)
Integer inverse_mod(const Integer& a, const Integer& n);
Integer pow_mod(const Integer& a, const Integer& e, const Integer& n);
Integer pow(const Integer& a, unsigned long e);
unsigned valuation(const Integer& n, const Integer& p);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n, Integer* root = nullptr);
bool is_squarefree(const Integer& n);

Integer euler_phi(const Integer& n);
Integer carmichael(const Integer& n);
Integer mult_order(const Integer& a, const Integer& n);
Integer primitive_root(const Integer& ell);
// Product of the distinct primes dividing n.
Integer core(const Integer& n);

// Solution x mod lcm of x = r_i mod m_i for pairwise coprime moduli.
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);

// Primes in [lo, hi] in increasing order (segmented sieve).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace capitulab::arith
