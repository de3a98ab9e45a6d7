#include "capitulab/cubf.hpp"

#include "capitulab/arith.hpp"
#include "capitulab/cyclo.hpp"

namespace capitulab::cubf {

bool is_cyclic_cubic_conductor(const Integer& f) {
  if (f < 7) return false;
  const unsigned h = arith::valuation(f, 3);
  if (h != 0 && h != 2) return false;
  const Integer F = f / arith::pow(Integer(3), h);
  for (const auto& [q, e] : arith::factorize(F).factors)
    if (e != 1 || arith::mod(q, 3) != 1) return false;
  return true;
}

std::vector<Integer> enumerate_conductors(const Integer& bf, const Integer& Bf) {
  std::vector<Integer> out;
  for (Integer f = std::max(bf, Integer(7)); f <= Bf; ++f)
    if (is_cyclic_cubic_conductor(f)) out.push_back(f);
  return out;
}

std::vector<CyclicCubicField> defining_polynomials(const Integer& f) {
  if (!is_cyclic_cubic_conductor(f)) throw DomainError(f.get_str() + " is not a cyclic cubic conductor");
  const unsigned h = arith::valuation(f, 3);
  std::vector<CyclicCubicField> out;
  for (Integer b = 1; 27 * b * b <= 4 * f; ++b) {
    if (h == 2 && arith::mod(b, 3) == 0) continue;
    Integer A = 4 * f - 27 * b * b, a;
    if (!arith::is_square(A, &a)) continue;
    CyclicCubicField k;
    k.f = f;
    k.h3 = h;
    k.b = b;
    if (h == 0) {
      if (arith::mod(a, 3) == 1) a = -a;
      k.poly = {(f * (a - 3) + 1) / 27, (1 - f) / 3, 1, 1};
    } else {
      if (arith::mod(a, 9) == 3) a = -a;
      k.poly = {-f * a / 27, -f / 3, 0, 1};
    }
    k.a = a;
    out.push_back(std::move(k));
  }
  if (out.empty()) throw DomainError("no representation 4f = a^2 + 27b^2 for f = " + f.get_str());
  return out;
}

CyclicCubicField defining_polynomial(const Integer& f) { return defining_polynomials(f).front(); }

namespace {

Integer content_valuation_divide(poly::Poly& g, const Integer& ell) {
  unsigned v = ~0u;
  for (const auto& c : g)
    if (c != 0) v = std::min(v, arith::valuation(c, ell));
  if (v == ~0u || v == 0) return 1;
  Integer pv = arith::pow(ell, v);
  for (auto& c : g) c /= pv;
  return pv;
}

bool root_search(poly::Poly g, const Integer& ell, int depth) {
  content_valuation_divide(g, ell);
  if (poly::degree(g) <= 0) return false;
  const poly::Poly dg = poly::derivative(g);
  for (Integer r = 0; r < ell; ++r) {
    if (arith::mod(poly::eval(g, r), ell) != 0) continue;
    if (arith::mod(poly::eval(dg, r), ell) != 0) return true;  // simple root lifts
    if (depth > 0) {
      poly::Poly h = poly::taylor_shift(g, r);
      poly::Poly scaled(h.size());
      Integer pw = 1;
      for (std::size_t i = 0; i < h.size(); ++i, pw *= ell) scaled[i] = h[i] * pw;
      if (root_search(scaled, ell, depth - 1)) return true;
    }
  }
  return false;
}

}  // namespace

bool has_ell_adic_root(const poly::Poly& g, const Integer& ell) {
  if (!arith::is_prime(ell)) throw DomainError("has_ell_adic_root: " + ell.get_str() + " is not prime");
  return root_search(g, ell, 64);
}

bool is_inert(const CyclicCubicField& field, const Integer& ell) {
  if (mpz_divisible_p(field.f.get_mpz_t(), ell.get_mpz_t()))
    throw DomainError("is_inert: " + ell.get_str() + " ramifies in the cubic field of conductor " + field.f.get_str());
  if (poly::degree(field.poly) != 3) throw std::logic_error("is_inert: defining polynomial is not cubic");
  // A cubic over Q_ell is irreducible exactly when it has no root in Z_ell.
  return !has_ell_adic_root(field.poly, ell);
}

std::vector<Integer> inert_primes(const CyclicCubicField& field, const Integer& p, unsigned N, const Integer& bound,
                                  const Integer& modulus_override) {
  const Integer mod = modulus_override != 0 ? modulus_override : Integer(2 * arith::pow(p, N));
  std::vector<Integer> out;
  if (bound < 2) return out;
  for (auto q : arith::primes_in_range(2, bound.get_ui())) {
    const Integer ell(static_cast<unsigned long>(q));
    if (arith::mod(ell - 1, mod) != 0) continue;
    if (mpz_divisible_p(field.f.get_mpz_t(), ell.get_mpz_t())) continue;
    if (is_inert(field, ell)) out.push_back(ell);
  }
  return out;
}

poly::Poly gaussian_period_poly(const Integer& ell, unsigned long deg) {
  if (!arith::is_prime(ell) || ell == 2) throw DomainError("gaussian_period_poly: ell must be an odd prime");
  if (!ell.fits_ulong_p() || ell > 20000) throw DomainError("gaussian_period_poly: ell too large");
  const unsigned long L = ell.get_ui();
  if (deg == 0 || (L - 1) % deg) throw DomainError("gaussian_period_poly: deg must divide ell - 1");
  const unsigned long len = (L - 1) / deg;
  const unsigned long g = arith::primitive_root(ell).get_ui();
  // eta_j = sum_t zeta^(g^(j + deg t)).
  unsigned long gj = 1;
  std::vector<cyclo::CycElem> eta;
  const unsigned long step = arith::pow_mod(Integer(g), Integer(deg), ell).get_ui();
  for (unsigned long j = 0; j < deg; ++j) {
    std::vector<Integer> c(L);
    unsigned long x = gj;
    for (unsigned long t = 0; t < len; ++t) {
      c[x] += 1;
      x = (x * step) % L;
    }
    eta.push_back(cyclo::CycElem::from_coeffs(L, c));
    gj = (gj * g) % L;
  }
  // prod_j (X - eta_j), coefficients in Q(zeta_ell).
  std::vector<cyclo::CycElem> acc{cyclo::CycElem::rational(L, 1)};
  for (const auto& e : eta) {
    std::vector<cyclo::CycElem> next(acc.size() + 1, cyclo::CycElem(L));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = next[i + 1] + acc[i];
      next[i] = next[i] - acc[i] * e;
    }
    acc = std::move(next);
  }
  poly::Poly out;
  for (const auto& c : acc) {
    auto q = c.as_rational();
    if (!q || q->get_den() != 1) throw std::logic_error("gaussian_period_poly: non-integral coefficient");
    out.push_back(q->get_num());
  }
  return out;
}

}  // namespace capitulab::cubf
