#include "capitulab/galchar.hpp"

#include <algorithm>
#include <numeric>

#include "capitulab/arith.hpp"

namespace capitulab::galchar {

using poly::Poly;

std::string PadicCharacter::label() const {
  std::string s = "phi(e=" + std::to_string(e) + ";";
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(orbit[i]);
  }
  return s + ")";
}

std::vector<PadicCharacter> enumerate_phi(unsigned long d, const Integer& p) {
  if (d == 0) throw DomainError("enumerate_phi: d must be positive");
  if (!arith::is_prime(p)) throw DomainError("enumerate_phi: " + p.get_str() + " is not prime");
  if (arith::gcd(p, Integer(d)) != 1) throw DomainError("enumerate_phi: p divides d");
  std::vector<PadicCharacter> out;
  for (unsigned long e = 1; e <= d; ++e) {
    if (d % e) continue;
    const unsigned long pe = arith::mod(p, Integer(e)).get_ui();
    std::vector<bool> seen(e, false);
    for (unsigned long a = 0; a < e; ++a) {
      if (seen[a] || std::gcd(a, e) != 1) continue;
      if (e == 1 && a != 0) continue;
      PadicCharacter phi;
      phi.d = d;
      phi.e = e;
      unsigned long x = a;
      do {
        seen[x] = true;
        phi.orbit.push_back(x);
        x = e == 1 ? 0 : (x * pe) % e;
      } while (x != a);
      std::sort(phi.orbit.begin(), phi.orbit.end());
      phi.degree = phi.orbit.size();
      out.push_back(std::move(phi));
    }
  }
  return out;
}

namespace {

// Arithmetic in F_p[y]/(m) with m monic irreducible.
struct ExtField {
  Integer p;
  Poly m;

  Poly mul(const Poly& a, const Poly& b) const { return poly::rem_monic(poly::mul(a, b), m, p); }
  Poly sub(const Poly& a, const Poly& b) const { return poly::sub_mod(a, b, p); }
  Poly pow(const Poly& a, const Integer& e) const { return poly::powmod(a, e, m, p); }
  bool is_one(const Poly& a) const { return a.size() == 1 && a[0] == 1; }
};

Poly counter_poly(const Integer& p, unsigned long index, std::size_t len) {
  Poly a(len);
  Integer n = index;
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = n % p;
    n /= p;
  }
  poly::trim(a);
  return a;
}

bool is_irreducible(const Poly& m, const Integer& p) {
  const long f = poly::degree(m);
  if (f == 1) return true;
  const Poly y{0, 1};
  auto frob_iter = [&](long k) {
    Poly r = poly::rem_monic(y, m, p);
    for (long i = 0; i < k; ++i) r = poly::powmod(r, p, m, p);
    return r;
  };
  if (poly::sub_mod(frob_iter(f), y, p) != Poly{}) return false;
  for (const auto& r : arith::prime_divisors(Integer(f))) {
    Poly t = poly::sub_mod(frob_iter(f / r.get_si()), y, p);
    auto [g, s, u] = poly::xgcd_field(t, m, p);
    if (poly::degree(g) != 0) return false;
  }
  return true;
}

Poly find_irreducible(const Integer& p, unsigned long f) {
  if (f == 1) return Poly{0, 1};
  for (unsigned long idx = 0;; ++idx) {
    Poly m = counter_poly(p, idx, f);
    m.resize(f + 1);
    m[f] = 1;
    if (m[0] == 0) continue;
    if (is_irreducible(m, p)) return m;
  }
}

Poly primitive_root_of_unity(const ExtField& F, unsigned long d) {
  const unsigned long f = poly::degree(F.m);
  const Integer q = arith::pow(F.p, f);
  const Integer cof = (q - 1) / d;
  const auto primes = arith::prime_divisors(Integer(d));
  for (unsigned long idx = 1;; ++idx) {
    Poly z = counter_poly(F.p, idx, f);
    Poly w = F.pow(z, cof);
    bool ok = true;
    for (const auto& r : primes)
      if (F.is_one(F.pow(w, Integer(d) / r))) {
        ok = false;
        break;
      }
    if (ok) return w;
  }
}

// g mod p^M with f = g h, lifted from the coprime factorisation mod p.
Poly hensel_lift(const Poly& f, Poly g, Poly h, const Integer& p, unsigned M) {
  auto [one, s, t] = poly::xgcd_field(g, h, p);
  if (one != Poly{1}) throw std::logic_error("hensel_lift: factors are not coprime mod p");
  Integer pk = p;
  for (unsigned k = 1; k < M; ++k) {
    Poly e = poly::sub(f, poly::mul(g, h));
    for (auto& c : e) {
      if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t()))
        throw std::logic_error("hensel_lift: precision invariant broken");
      c /= pk;
    }
    e = poly::reduce(e, p);
    Poly gp = poly::reduce(g, p);
    Poly a = poly::rem_monic(poly::mul(e, t), gp, p);
    auto [b, rem] = poly::divrem_monic(poly::sub(e, poly::mul(a, h)), gp, p);
    if (rem != Poly{}) throw std::logic_error("hensel_lift: inexact cofactor update");
    g = poly::add(g, poly::scale(a, pk));
    h = poly::add(h, poly::scale(b, pk));
    pk *= p;
    g = poly::reduce(g, pk);
    h = poly::reduce(h, pk);
  }
  return poly::reduce(g, pk);
}

Poly xd_minus_1(unsigned long d) {
  Poly f(d + 1);
  f[0] = -1;
  f[d] = 1;
  return f;
}

}  // namespace

HenselFactorization factor_xd_minus_1(unsigned long d, const Integer& p, unsigned precision) {
  if (precision < 1) throw DomainError("factor_xd_minus_1: precision must be at least 1");
  HenselFactorization out;
  out.d = d;
  out.p = p;
  out.precision = precision;
  out.modulus = arith::pow(p, precision);
  out.characters = enumerate_phi(d, p);

  const unsigned long f = arith::mult_order(p, Integer(d)).get_ui();
  ExtField F{p, find_irreducible(p, f)};
  const Poly w = primitive_root_of_unity(F, d);

  const Poly fx = xd_minus_1(d);
  for (const auto& phi : out.characters) {
    // prod over the orbit of (x - w^(a d/e)), coefficients in F_p[y]/(m).
    std::vector<Poly> acc{Poly{1}};
    for (unsigned long a : phi.orbit) {
      Poly root = F.pow(w, Integer(a * (d / phi.e)));
      std::vector<Poly> next(acc.size() + 1);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] = poly::add_mod(next[i + 1], acc[i], p);
        next[i] = F.sub(next[i], F.mul(acc[i], root));
      }
      acc = std::move(next);
    }
    Poly g(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (poly::degree(acc[i]) > 0) throw std::logic_error("orbit factor not defined over F_p");
      g[i] = acc[i].empty() ? Integer(0) : acc[i][0];
    }
    out.residue_factors.push_back(g);
  }
  for (const auto& g : out.residue_factors) {
    auto [h, r] = poly::divrem_monic(fx, g, p);
    if (r != Poly{}) throw std::logic_error("orbit factor does not divide x^d - 1");
    out.factors.push_back(precision == 1 ? g : hensel_lift(fx, g, h, p, precision));
  }
  Poly prod{1};
  for (const auto& g : out.factors) prod = poly::mul_mod(prod, g, out.modulus);
  if (prod != poly::reduce(fx, out.modulus))
    throw std::logic_error("factor_xd_minus_1: product check failed");
  return out;
}

GaloisModule::GaloisModule(abgroup::FinAbGroup group, IntMatrix sigma, unsigned long d)
    : group_(std::move(group)), sigma_(std::move(sigma)), d_(d) {
  const std::size_t r = group_.rank();
  if (d_ == 0) throw DomainError("GaloisModule: d must be positive");
  if (sigma_.rows() != r || sigma_.cols() != r)
    throw DomainError("GaloisModule: sigma must be " + std::to_string(r) + "x" + std::to_string(r));
  sigma_ = reduce_cols(sigma_);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!mpz_divisible_p(Integer(group_.divisors()[i] * sigma_(i, j)).get_mpz_t(),
                           group_.divisors()[j].get_mpz_t()))
        throw DomainError("GaloisModule: row " + std::to_string(i) +
                          " is not a homomorphic image of its generator");
  IntMatrix pw = IntMatrix::identity(r);
  for (unsigned long k = 0; k < d_; ++k) pw = reduce_cols(pw * sigma_);
  if (!(pw == reduce_cols(IntMatrix::identity(r))))
    throw DomainError("GaloisModule: sigma^d is not the identity");
}

IntMatrix GaloisModule::reduce_cols(IntMatrix m) const {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = arith::mod(m(i, j), group_.divisors()[j]);
  return m;
}

abgroup::GroupVec GaloisModule::apply(const abgroup::GroupVec& v) const {
  std::vector<Integer> out(group_.rank());
  for (std::size_t i = 0; i < group_.rank(); ++i)
    for (std::size_t j = 0; j < group_.rank(); ++j) out[j] += v.coords()[i] * sigma_(i, j);
  return abgroup::GroupVec(group_, out);
}

IntMatrix GaloisModule::evaluate(const Poly& c) const {
  const std::size_t r = group_.rank();
  IntMatrix acc(r, r), pw = IntMatrix::identity(r);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) acc(i, j) += c[k] * pw(i, j);
    pw = reduce_cols(pw * sigma_);
  }
  return reduce_cols(acc);
}

Decomposition decompose(const GaloisModule& module, const Integer& p) {
  const auto& G = module.group();
  if (arith::gcd(p, Integer(module.d())) != 1) throw DomainError("decompose: p divides d");
  for (const auto& x : G.divisors())
    if (arith::valuation(x, p) == 0 || arith::pow(p, arith::valuation(x, p)) != x)
      throw DomainError("decompose: " + G.str() + " is not a " + p.get_str() + "-group");
  Decomposition out;
  out.p = p;
  out.precision = G.is_trivial() ? 1 : arith::valuation(abgroup::exponent(G), p);
  const HenselFactorization hf = factor_xd_minus_1(module.d(), p, out.precision);
  const Integer& N = hf.modulus;
  const Poly fx = xd_minus_1(module.d());

  Integer total = 1;
  for (std::size_t i = 0; i < hf.factors.size(); ++i) {
    const Poly& g = hf.factors[i];
    auto [cof, r] = poly::divrem_monic(fx, g, N);
    if (r != Poly{}) throw std::logic_error("decompose: factor does not divide x^d - 1");
    // Bezout mod p, then Newton iteration e -> 3e^2 - 2e^3 lifts the idempotent.
    auto [one, s, t] = poly::xgcd_field(cof, poly::reduce(g, p), p);
    if (one != Poly{1}) throw std::logic_error("decompose: cofactors not coprime mod p");
    Poly e = poly::rem_monic(poly::mul(s, cof), fx, N);
    for (Integer prec = p; prec < N; prec *= prec) {
      Poly e2 = poly::rem_monic(poly::mul(e, e), fx, N);
      Poly e3 = poly::rem_monic(poly::mul(e2, e), fx, N);
      e = poly::reduce(poly::sub(poly::scale(e2, 3), poly::scale(e3, 2)), N);
    }
    if (poly::rem_monic(poly::mul(e, e), fx, N) != e)
      throw std::logic_error("decompose: idempotent lift failed");
    IntMatrix img = module.evaluate(e);
    std::vector<std::vector<Integer>> rows;
    for (std::size_t k = 0; k < img.rows(); ++k) rows.push_back(img.row(k));
    Component c{hf.characters[i], e, abgroup::subgroup_from_rows(G, rows)};
    total *= c.subgroup.order();
    out.components.push_back(std::move(c));
  }
  if (total != G.order()) throw std::logic_error("decompose: component orders do not multiply out");
  return out;
}

std::optional<unsigned> monogenic_exponent(const Integer& order, unsigned long rho) {
  if (rho == 0) throw DomainError("monogenic_exponent: rho must be positive");
  if (order < 1) throw DomainError("monogenic_exponent: order must be positive");
  if (order == 1) return 0u;
  const auto fac = arith::factorize(order);
  if (fac.factors.size() != 1) return std::nullopt;
  unsigned v = fac.factors[0].second;
  if (v % rho) return std::nullopt;
  return static_cast<unsigned>(v / rho);
}

std::map<unsigned long, Rational> chi_resolve(unsigned long d,
                                              const std::map<unsigned long, Rational>& per_subfield,
                                              bool require_integral) {
  if (d == 0) throw DomainError("chi_resolve: d must be positive");
  std::map<unsigned long, Rational> out;
  for (unsigned long t = 1; t <= d; ++t) {
    if (d % t) continue;
    auto it = per_subfield.find(t);
    if (it == per_subfield.end())
      throw DomainError("chi_resolve: missing value for divisor " + std::to_string(t));
    Rational denom = 1;
    for (const auto& [s, a] : out)
      if (t % s == 0) denom *= a;
    Rational a = it->second / denom;
    a.canonicalize();
    if (a <= 0)
      throw DomainError("chi_resolve: non-positive value at divisor " + std::to_string(t));
    if (require_integral && a.get_den() != 1)
      throw DomainError("chi_resolve: non-integral value " + a.get_str() + " at divisor " +
                        std::to_string(t));
    out[t] = a;
  }
  return out;
}

}  // namespace capitulab::galchar
