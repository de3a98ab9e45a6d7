#include "capitulab/arith.hpp"

#include <algorithm>
#include <map>

namespace capitulab {

std::string format_list(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

}  // namespace capitulab

namespace capitulab::arith {

namespace {

constexpr std::uint64_t kTrialBound = 1000000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit inputs with these witnesses.
bool miller_rabin64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n is odd, composite and has no factor below the trial bound.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

Integer Factorization::product() const {
  Integer r = 1;
  for (const auto& [p, e] : factors) r *= pow(p, e);
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return miller_rabin64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const Integer& n) {
  if (n <= 0) throw DomainError("factorize: n must be positive, got " + n.get_str());
  Factorization fac{n, {}};
  Integer m = n;
  const auto& primes = small_primes();
  for (std::uint32_t q : primes) {
    if (Integer(q) * q > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
        ++e;
      }
      fac.factors.emplace_back(Integer(q), e);
    }
  }
  if (m > 1) {
    std::map<Integer, unsigned> rest;
    split(m, rest);
    for (const auto& [p, e] : rest) fac.factors.emplace_back(p, e);
  }
  return fac;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(n).factors) out.push_back(p);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(n).factors) {
    std::size_t sz = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer mod(const Integer& a, const Integer& n) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& n) {
  Integer r;
  if (n == 1) return 0;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()))
    throw DomainError("inverse_mod: " + a.get_str() + " is not invertible mod " + n.get_str());
  return r;
}

Integer pow_mod(const Integer& a, const Integer& e, const Integer& n) {
  if (e < 0) return pow_mod(inverse_mod(a, n), -e, n);
  Integer r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer pow(const Integer& a, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (p < 2) throw DomainError("valuation: base must be at least 2");
  Integer m = abs(n);
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = isqrt(n);
  return true;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(abs(n)).factors)
    if (e > 1) return false;
  return true;
}

Integer euler_phi(const Integer& n) {
  Integer r = 1;
  for (const auto& [p, e] : factorize(n).factors) r *= (p - 1) * pow(p, e - 1);
  return r;
}

Integer carmichael(const Integer& n) {
  Integer r = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    Integer l;
    if (p == 2 && e >= 3)
      l = pow(Integer(2), e - 2);
    else
      l = (p - 1) * pow(p, e - 1);
    r = lcm(r, l);
  }
  return r;
}

Integer mult_order(const Integer& a, const Integer& n) {
  if (n < 1) throw DomainError("mult_order: modulus must be positive");
  if (gcd(a, n) != 1)
    throw DomainError("mult_order: " + a.get_str() + " is not a unit mod " + n.get_str());
  if (n == 1) return 1;
  Integer ord = carmichael(n);
  Integer base = mod(a, n);
  for (const auto& [q, e] : factorize(ord).factors) {
    for (unsigned k = 0; k < e; ++k) {
      if (pow_mod(base, ord / q, n) != 1) break;
      ord /= q;
    }
  }
  return ord;
}

Integer primitive_root(const Integer& ell) {
  if (ell < 3 || !is_prime(ell))
    throw DomainError("primitive_root: " + ell.get_str() + " is not an odd prime");
  const auto qs = prime_divisors(ell - 1);
  for (Integer g = 2;; ++g) {
    bool ok = true;
    for (const auto& q : qs) {
      if (pow_mod(g, (ell - 1) / q, ell) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

Integer core(const Integer& n) {
  if (n < 1) throw DomainError("core: n must be positive");
  Integer r = 1;
  for (const auto& [p, e] : factorize(n).factors) r *= p;
  return r;
}

Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
  if (residues.size() != moduli.size()) throw DomainError("crt: size mismatch");
  Integer x = 0, m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const Integer& mi = moduli[i];
    if (gcd(m, mi) != 1) throw DomainError("crt: moduli are not pairwise coprime");
    Integer t = mod((residues[i] - x) * inverse_mod(m, mi), mi);
    x += m * t;
    m *= mi;
  }
  return mod(x, m);
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  std::vector<std::uint64_t> base;
  {
    std::vector<bool> comp(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (comp[i]) continue;
      base.push_back(i);
      for (std::uint64_t j = i * i; j <= root; j += i) comp[j] = true;
    }
  }
  const std::uint64_t seg = 1 << 16;
  for (std::uint64_t start = lo; start <= hi; start += seg) {
    std::uint64_t end = std::min(hi, start + seg - 1);
    std::vector<bool> comp(end - start + 1, false);
    for (std::uint64_t q : base) {
      std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
      for (std::uint64_t j = first; j <= end; j += q) comp[j - start] = true;
    }
    for (std::uint64_t i = start; i <= end; ++i)
      if (!comp[i - start]) out.push_back(i);
    if (end == hi) break;
  }
  return out;
}

}  // namespace capitulab::arith
