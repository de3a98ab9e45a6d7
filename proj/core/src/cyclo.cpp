#include "capitulab/cyclo.hpp"

#include <mpfr.h>

#include <mutex>
#include <numeric>

#include "capitulab/arith.hpp"
#include "capitulab/quadf.hpp"

namespace capitulab::cyclo {

struct Context {
  unsigned long f;
  std::size_t phi;
  std::vector<long> phi_poly;  // Phi_f, monic, degree phi
};

namespace {

poly::Poly exact_div_monic(const poly::Poly& a, const poly::Poly& b) {
  long da = poly::degree(a), db = poly::degree(b);
  poly::Poly r = a, q(da - db + 1);
  for (long k = da; k >= db; --k) {
    Integer c = r[k];
    if (c == 0) continue;
    q[k - db] = c;
    for (long j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
  }
  poly::trim(r);
  if (!r.empty()) throw std::logic_error("cyclotomic_poly: inexact division");
  poly::trim(q);
  return q;
}

std::shared_ptr<const Context> context(unsigned long f) {
  static std::mutex mu;
  static std::map<unsigned long, std::shared_ptr<const Context>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
  }
  poly::Poly P = cyclotomic_poly(f);
  auto ctx = std::make_shared<Context>();
  ctx->f = f;
  ctx->phi = static_cast<std::size_t>(poly::degree(P));
  for (const auto& c : P) {
    if (!c.fits_slong_p()) throw DomainError("cyclotomic coefficient too large");
    ctx->phi_poly.push_back(c.get_si());
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(f, ctx).first->second;
}

void reduce_in_place(std::vector<Integer>& r, const Context& ctx) {
  const std::size_t phi = ctx.phi;
  for (std::size_t k = r.size(); k-- > phi;) {
    const Integer c = r[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      long pj = ctx.phi_poly[j];
      if (pj > 0)
        mpz_submul_ui(r[k - phi + j].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(pj));
      else if (pj < 0)
        mpz_addmul_ui(r[k - phi + j].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-pj));
    }
    r[k] = 0;
  }
  r.resize(phi);
}

unsigned long mod_ul(long a, unsigned long n) {
  long r = a % static_cast<long>(n);
  return static_cast<unsigned long>(r < 0 ? r + static_cast<long>(n) : r);
}

}  // namespace

poly::Poly cyclotomic_poly(unsigned long f) {
  if (f == 0) throw DomainError("cyclotomic_poly: level must be positive");
  static std::mutex mu;
  static std::map<unsigned long, poly::Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
  }
  poly::Poly P(f + 1);
  P[0] = -1;
  P[f] = 1;
  for (unsigned long d = 1; d < f; ++d)
    if (f % d == 0) P = exact_div_monic(P, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(f, P).first->second;
}

CycElem::CycElem(unsigned long f) : ctx_(context(f)), num_(ctx_->phi), den_(1) {}

CycElem::CycElem(std::shared_ptr<const Context> ctx, std::vector<Integer> num, Integer den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
  reduce_in_place(num_, *ctx_);
  normalize();
}

void CycElem::normalize() {
  if (den_ == 0) throw DomainError("CycElem: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

CycElem CycElem::zeta_power(unsigned long f, long k) {
  auto ctx = context(f);
  std::vector<Integer> c(f);
  c[mod_ul(k, f)] = 1;
  return CycElem(ctx, std::move(c), 1);
}

CycElem CycElem::rational(unsigned long f, const Rational& q) {
  auto ctx = context(f);
  std::vector<Integer> c(ctx->phi);
  c[0] = q.get_num();
  return CycElem(ctx, std::move(c), q.get_den());
}

CycElem CycElem::from_coeffs(unsigned long f, const std::vector<Integer>& c, const Integer& den) {
  auto ctx = context(f);
  std::vector<Integer> t(std::max<std::size_t>(f, ctx->phi));
  for (std::size_t i = 0; i < c.size(); ++i) t[i % f] += c[i];
  return CycElem(ctx, std::move(t), den);
}

unsigned long CycElem::level() const { return ctx_->f; }

Rational CycElem::coeff(std::size_t i) const {
  Rational q(num_.at(i), den_);
  q.canonicalize();
  return q;
}

CycElem CycElem::operator+(const CycElem& o) const {
  if (level() != o.level()) throw DomainError("CycElem: level mismatch");
  std::vector<Integer> c(num_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = num_[i] * o.den_ + o.num_[i] * den_;
  return CycElem(ctx_, std::move(c), den_ * o.den_);
}

CycElem CycElem::operator-(const CycElem& o) const { return *this + o * Rational(-1); }

CycElem CycElem::operator*(const CycElem& o) const {
  if (level() != o.level()) throw DomainError("CycElem: level mismatch");
  const std::size_t n = num_.size();
  std::vector<Integer> c(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.num_[j] != 0) mpz_addmul(c[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
  }
  return CycElem(ctx_, std::move(c), den_ * o.den_);
}

CycElem CycElem::operator*(const Rational& q) const {
  std::vector<Integer> c = num_;
  for (auto& x : c) x *= q.get_num();
  return CycElem(ctx_, std::move(c), den_ * q.get_den());
}

bool CycElem::operator==(const CycElem& o) const {
  return level() == o.level() && den_ == o.den_ && num_ == o.num_;
}

bool CycElem::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

CycElem CycElem::pow(unsigned long e) const {
  CycElem r = rational(level(), 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CycElem CycElem::galois(long a) const {
  const unsigned long f = level();
  const unsigned long am = mod_ul(a, f);
  if (std::gcd(am, f) != 1) throw DomainError("galois: " + std::to_string(a) + " is not a unit mod " + std::to_string(f));
  std::vector<Integer> t(std::max<std::size_t>(f, num_.size()));
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) t[(am * i) % f] += num_[i];
  return CycElem(ctx_, std::move(t), den_);
}

CycElem CycElem::embed(unsigned long F) const {
  const unsigned long f = level();
  if (F % f) throw DomainError("embed: level " + std::to_string(f) + " does not divide " + std::to_string(F));
  const unsigned long k = F / f;
  auto ctx = context(F);
  std::vector<Integer> t(std::max<std::size_t>(F, ctx->phi));
  for (std::size_t i = 0; i < num_.size(); ++i) t[(i * k) % F] += num_[i];
  return CycElem(ctx, std::move(t), den_);
}

std::optional<Rational> CycElem::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  Rational q(num_.empty() ? Integer(0) : num_[0], den_);
  q.canonicalize();
  return q;
}

CycElem CycElem::inverse() const {
  if (is_zero()) throw DomainError("CycElem: inverse of zero");
  const unsigned long f = level();
  CycElem others = rational(f, 1);
  for (unsigned long a = 2; a < f; ++a)
    if (std::gcd(a, f) == 1) others = others * galois(static_cast<long>(a));
  auto n = (*this * others).as_rational();
  if (!n || *n == 0) throw std::logic_error("CycElem: norm is not a nonzero rational");
  return others * Rational(1 / *n);
}

CyclicRingElem::CyclicRingElem(unsigned long n) : c_(n) {
  if (n == 0) throw DomainError("CyclicRingElem: n must be positive");
}

CyclicRingElem CyclicRingElem::one(unsigned long n) {
  CyclicRingElem e(n);
  e.c_[0] = 1;
  return e;
}

void CyclicRingElem::mul_binomial(unsigned long a, unsigned long b) {
  const std::size_t n = c_.size();
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    out[(i + a) % n] += c_[i];
    out[(i + b) % n] -= c_[i];
  }
  c_ = std::move(out);
}

CyclicRingElem CyclicRingElem::operator*(const CyclicRingElem& o) const {
  const std::size_t n = c_.size();
  if (o.c_.size() != n) throw DomainError("CyclicRingElem: size mismatch");
  CyclicRingElem r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.c_[j] != 0) mpz_addmul(r.c_[(i + j) % n].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
  }
  return r;
}

CycElem CyclicRingElem::to_cyc() const { return CycElem::from_coeffs(c_.size(), c_); }

CycElem eta(unsigned long f) { return CycElem::rational(f, 1) - CycElem::zeta_power(f, 1); }

Rational absolute_norm(const CycElem& x) {
  const unsigned long f = x.level();
  CycElem prod = CycElem::rational(f, 1);
  for (unsigned long a = 1; a <= std::max(1ul, f - 1); ++a)
    if (std::gcd(a, f) == 1) prod = prod * x.galois(static_cast<long>(a));
  auto q = prod.as_rational();
  if (!q) throw std::logic_error("absolute_norm: product of conjugates is not rational");
  return *q;
}

namespace {

// Rational solution c of sum_j c_j cols[j] = target, or empty when inconsistent.
std::optional<std::vector<Rational>> solve_exact(const std::vector<CycElem>& cols, const CycElem& target) {
  const std::size_t R = target.dimension(), C = cols.size();
  std::vector<std::vector<Rational>> M(R, std::vector<Rational>(C + 1));
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) M[i][j] = cols[j].coeff(i);
    M[i][C] = target.coeff(i);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (M[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    std::swap(M[r], M[piv]);
    Rational inv = 1 / M[r][c];
    for (std::size_t j = c; j <= C; ++j) M[r][j] *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rational k = M[i][c];
      for (std::size_t j = c; j <= C; ++j)
        if (M[r][j] != 0) M[i][j] -= k * M[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < R; ++i)
    if (M[i][C] != 0) return std::nullopt;
  std::vector<Rational> sol(C);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = M[i][C];
  return sol;
}

}  // namespace

CycElem descend(const CycElem& x, unsigned long m) {
  const unsigned long f = x.level();
  if (m == 0 || f % m) throw DomainError("descend: " + std::to_string(m) + " does not divide " + std::to_string(f));
  if (m == f) return x;
  const unsigned long k = f / m;
  const std::size_t phim = CycElem(m).dimension();
  std::vector<CycElem> cols;
  for (std::size_t j = 0; j < phim; ++j) cols.push_back(CycElem::zeta_power(f, static_cast<long>(j * k)));
  auto sol = solve_exact(cols, x);
  if (!sol) throw DomainError("descend: element is not in Q(zeta_" + std::to_string(m) + ")");
  std::vector<Integer> num(phim);
  Integer den = 1;
  for (const auto& q : *sol) den = arith::lcm(den, q.get_den());
  for (std::size_t j = 0; j < phim; ++j) num[j] = (*sol)[j].get_num() * (den / (*sol)[j].get_den());
  CycElem y = CycElem::from_coeffs(m, num, den);
  if (!(y.embed(f) == x)) throw std::logic_error("descend: reconstruction mismatch");
  return y;
}

CycElem norm_to_level(const CycElem& x, unsigned long m) {
  const unsigned long f = x.level();
  if (m == 0 || f % m) throw DomainError("norm_to_level: " + std::to_string(m) + " does not divide " + std::to_string(f));
  CycElem prod = CycElem::rational(f, 1);
  for (unsigned long a = 1; a <= std::max(1ul, f - 1); ++a)
    if (std::gcd(a, f) == 1 && (a - 1) % m == 0) prod = prod * x.galois(static_cast<long>(a));
  return descend(prod, m);
}

std::string GroupRingExp::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [a, c] : terms) {
    Integer mag = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    std::string mono = a == 1 ? "1" : "tau_" + std::to_string(a);
    if (mag == 1)
      s += mono;
    else
      s += mag.get_str() + (a == 1 ? "" : "*" + mono);
  }
  return s;
}

GroupRingExp frobenius_omega(unsigned long m, const std::vector<unsigned long>& primes) {
  if (m == 0) throw DomainError("frobenius_omega: modulus must be positive");
  GroupRingExp w;
  w.m = m;
  w.terms[m == 1 ? 0 : 1] = 1;
  for (unsigned long ell : primes) {
    if (std::gcd(ell, m) != 1) throw DomainError("frobenius_omega: " + std::to_string(ell) + " divides the level");
    const unsigned long inv = m == 1 ? 0 : arith::inverse_mod(Integer(ell), Integer(m)).get_ui();
    std::map<unsigned long, Integer> next = w.terms;
    for (const auto& [a, c] : w.terms) next[m == 1 ? 0 : (a * inv) % m] -= c;
    w.terms.clear();
    for (const auto& [a, c] : next)
      if (c != 0) w.terms[a] = c;
  }
  return w;
}

CycElem apply_exponent(const CycElem& x, const GroupRingExp& omega) {
  CycElem num = CycElem::rational(x.level(), 1), den = num;
  for (const auto& [a, c] : omega.terms) {
    CycElem y = x.galois(static_cast<long>(a));
    if (c > 0)
      num = num * y.pow(c.get_ui());
    else
      den = den * y.pow(Integer(-c).get_ui());
  }
  return num * den.inverse();
}

NormRelationCheck verify_norm_relation(unsigned long f, unsigned long m) {
  if (m < 2 || f % m) throw DomainError("verify_norm_relation: need 1 < m | f");
  NormRelationCheck out;
  out.f = f;
  out.m = m;
  std::vector<unsigned long> ells;
  for (const auto& q : arith::prime_divisors(Integer(f)))
    if (m % q.get_ui() != 0) ells.push_back(q.get_ui());
  out.omega = frobenius_omega(m, ells);
  out.norm = norm_to_level(eta(f), m);
  // Cross-multiplied so that negative exponents need no inversion.
  const CycElem em = eta(m);
  CycElem lhs = out.norm, rhs = CycElem::rational(m, 1);
  for (const auto& [a, c] : out.omega.terms) {
    CycElem y = em.galois(static_cast<long>(a));
    if (c > 0)
      rhs = rhs * y.pow(c.get_ui());
    else
      lhs = lhs * y.pow(Integer(-c).get_ui());
  }
  out.holds = lhs == rhs;
  return out;
}

OmegaInvertibility omega_invertibility(unsigned long d, const Integer& p, unsigned long e, unsigned long frob) {
  if (e <= 1) throw DomainError("omega_invertibility: the character must be nontrivial");
  if (d % e) throw DomainError("omega_invertibility: e must divide d");
  if (!arith::is_prime(p) || arith::gcd(p, Integer(d)) != 1)
    throw DomainError("omega_invertibility: p must be a prime not dividing d");
  if (std::gcd(frob % d, d) != 1)
    throw DomainError("omega_invertibility: the Frobenius residue must generate Z/d");
  const long k = -static_cast<long>(frob % e);
  CycElem y = CycElem::rational(e, 1) - CycElem::zeta_power(e, k);
  OmegaInvertibility out;
  Rational n = absolute_norm(y);
  if (n.get_den() != 1) throw std::logic_error("omega_invertibility: non-integral norm");
  out.norm = abs(n.get_num());
  out.valuation = out.norm == 0 ? 0 : arith::valuation(out.norm, p);
  return out;
}

QuadNumber QuadNumber::operator*(const QuadNumber& o) const {
  if (D != o.D) throw DomainError("QuadNumber: discriminant mismatch");
  return {D, r * o.r + D * s * o.s, r * o.s + s * o.r};
}

namespace {

bool is_fundamental_discriminant(const Integer& f) {
  if (f <= 1) return false;
  Integer r = arith::mod(f, 4);
  if (r == 1) return arith::is_squarefree(f);
  if (r != 0) return false;
  Integer m = f / 4, rm = arith::mod(m, 4);
  return (rm == 2 || rm == 3) && arith::is_squarefree(m);
}

}  // namespace

ThetaSquare theta_chi(const Integer& f) {
  if (!is_fundamental_discriminant(f)) throw DomainError("theta_chi: " + f.get_str() + " is not a real fundamental discriminant");
  if (!f.fits_ulong_p() || f > 100000) throw DomainError("theta_chi: conductor too large");
  const unsigned long F = f.get_ui(), n = 2 * F;
  ThetaSquare out;
  out.f = f;
  CyclicRingElem theta = CyclicRingElem::one(n);
  for (unsigned long a = 1; 2 * a < F; ++a) {
    if (std::gcd(a, F) != 1 || arith::kronecker(f, Integer(a)) != 1) continue;
    out.half_system.push_back(a);
    theta.mul_binomial(a, n - a);
  }
  CycElem t2 = (theta * theta).to_cyc();
  std::vector<Integer> g(n);
  for (unsigned long a = 1; a < F; ++a) g[2 * a] = arith::kronecker(f, Integer(a));
  CycElem gauss = CycElem::from_coeffs(n, g);
  auto sol = solve_exact({CycElem::rational(n, 1), gauss}, t2);
  if (!sol) throw std::logic_error("theta_chi: theta^2 does not lie in the quadratic subfield");
  out.value = {f, (*sol)[0], (*sol)[1]};
  return out;
}

namespace {

// log(|r| + |s| sqrt D), which is |log|u|| for a unit u = r + s sqrt D.
void log_large_conjugate(mpfr_t out, const QuadNumber& u, mpfr_prec_t prec) {
  mpfr_t a, b, t;
  mpfr_inits2(prec, a, b, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, Rational(abs(u.r)).get_mpq_t(), MPFR_RNDN);
  mpfr_set_z(t, u.D.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(t, t, MPFR_RNDN);
  mpfr_set_q(b, Rational(abs(u.s)).get_mpq_t(), MPFR_RNDN);
  mpfr_mul(b, b, t, MPFR_RNDN);
  mpfr_add(a, a, b, MPFR_RNDN);
  mpfr_log(out, a, MPFR_RNDN);
  mpfr_clears(a, b, t, static_cast<mpfr_ptr>(nullptr));
}

QuadNumber qpow(const QuadNumber& x, unsigned long e) {
  QuadNumber r{x.D, 1, 0}, b = x;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

}  // namespace

CyclotomicIndex cyclotomic_unit_exponent(const Integer& f) {
  if (!arith::is_prime(f) || arith::mod(f, 4) != 1)
    throw DomainError("cyclotomic_unit_exponent: " + f.get_str() + " is not a prime = 1 mod 4");
  const ThetaSquare th = theta_chi(f);
  const QuadNumber& a = th.value;
  const Rational na = a.norm();
  if (na == 0) throw std::logic_error("cyclotomic_unit_exponent: theta^2 has zero norm");
  QuadNumber w = a * a;
  w.r /= na;
  w.s /= na;
  CyclotomicIndex out;
  out.f = f;
  out.unit = w;
  if (abs(w.norm()) != 1) throw std::logic_error("cyclotomic_unit_exponent: theta^(2(1-sigma)) is not a unit");

  const auto fu = quadf::fundamental_unit(f);
  QuadNumber eps{f, Rational(fu.x, 2), Rational(fu.y, 2)};
  eps.r.canonicalize();
  eps.s.canonicalize();
  for (unsigned digits = 100; digits <= 1600; digits *= 2) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
    mpfr_t lw, le, q;
    mpfr_inits2(prec, lw, le, q, static_cast<mpfr_ptr>(nullptr));
    log_large_conjugate(lw, w, prec);
    log_large_conjugate(le, eps, prec);
    mpfr_mul_ui(le, le, 2, MPFR_RNDN);
    mpfr_div(q, lw, le, MPFR_RNDN);
    mpfr_round(q, q);
    long cand = mpfr_get_si(q, MPFR_RNDN);
    mpfr_clears(lw, le, q, static_cast<mpfr_ptr>(nullptr));
    for (long h : {cand, cand - 1, cand + 1}) {
      if (h < 0) continue;
      const QuadNumber E = qpow(eps, 2 * static_cast<unsigned long>(h));
      const QuadNumber one{f, 1, 0};
      for (int sign : {1, -1}) {
        QuadNumber sE = sign == 1 ? E : -E;
        if (w == sE) {
          out.exponent = h;
          out.sign = sign;
          out.orientation = 1;
          out.precision_digits = digits;
          return out;
        }
        if (w * sE == one) {
          out.exponent = h;
          out.sign = sign;
          out.orientation = -1;
          out.precision_digits = digits;
          return out;
        }
      }
    }
  }
  throw std::logic_error("cyclotomic_unit_exponent: no exponent confirmed for f = " + f.get_str());
}

}  // namespace capitulab::cyclo
