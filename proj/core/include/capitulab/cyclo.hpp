#pragma once

#include "capitulab/common.hpp"
#include "capitulab/modpoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace capitulab::cyclo {

poly::Poly cyclotomic_poly(unsigned long f);

struct Context;

// Element of Q(zeta_f) in the power basis reduced modulo Phi_f, stored as integer
// numerators over one positive denominator.
class CycElem {
public:
  explicit CycElem(unsigned long f);
  static CycElem zeta_power(unsigned long f, long k);
  static CycElem rational(unsigned long f, const Rational& q);
  // sum c_i zeta^i for arbitrary exponent range, then reduced.
  static CycElem from_coeffs(unsigned long f, const std::vector<Integer>& c, const Integer& den = 1);

  unsigned long level() const;
  std::size_t dimension() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  CycElem operator+(const CycElem& o) const;
  CycElem operator-(const CycElem& o) const;
  CycElem operator*(const CycElem& o) const;
  CycElem operator*(const Rational& q) const;
  bool operator==(const CycElem& o) const;
  bool is_zero() const;

  CycElem pow(unsigned long e) const;
  // sigma_a : zeta -> zeta^a, gcd(a, f) = 1.
  CycElem galois(long a) const;
  // Same element viewed at level F (f | F).
  CycElem embed(unsigned long F) const;
  std::optional<Rational> as_rational() const;
  CycElem inverse() const;

private:
  CycElem(std::shared_ptr<const Context> ctx, std::vector<Integer> num, Integer den);
  void normalize();
  std::shared_ptr<const Context> ctx_;
  std::vector<Integer> num_;
  Integer den_;
};

// Integer combinations of the n-th roots of unity, kept modulo x^n - 1. Used to build
// long products cheaply before a single reduction.
class CyclicRingElem {
public:
  explicit CyclicRingElem(unsigned long n);
  static CyclicRingElem one(unsigned long n);
  void mul_binomial(unsigned long a, unsigned long b);  // *= zeta^a - zeta^b
  CyclicRingElem operator*(const CyclicRingElem& o) const;
  CycElem to_cyc() const;
  const std::vector<Integer>& coeffs() const { return c_; }

private:
  std::vector<Integer> c_;
};

CycElem eta(unsigned long f);  // 1 - zeta_f
Rational absolute_norm(const CycElem& x);
// N_{Q(zeta_f)/Q(zeta_m)}(x) re-expressed at level m.
CycElem norm_to_level(const CycElem& x, unsigned long m);
// Coordinates at level m of an element of Q(zeta_f) lying in Q(zeta_m); throws otherwise.
CycElem descend(const CycElem& x, unsigned long m);

// Element of Z[(Z/m)^*] with sigma_a indexed by a.
struct GroupRingExp {
  unsigned long m = 1;
  std::map<unsigned long, Integer> terms;

  bool is_zero() const { return terms.empty(); }
  std::string str() const;  // "1 - tau_2"
};

// prod over the given primes of (1 - tau_ell^{-1}) in Z[(Z/m)^*].
GroupRingExp frobenius_omega(unsigned long m, const std::vector<unsigned long>& primes);
CycElem apply_exponent(const CycElem& x, const GroupRingExp& omega);

struct NormRelationCheck {
  unsigned long f = 1, m = 1;
  GroupRingExp omega;
  CycElem norm{1};
  bool holds = false;
};

// N(eta_f) == eta_m^Omega with Omega over the primes dividing f but not m.
NormRelationCheck verify_norm_relation(unsigned long f, unsigned long m);

struct OmegaInvertibility {
  Integer norm;  // |N_{Q(zeta_e)/Q}(1 - psi(tau^{-1}))|
  unsigned valuation = 0;
  bool invertible() const { return norm != 0 && valuation == 0; }
};

// tau acts as the residue frob on Z/d; psi has order e.
OmegaInvertibility omega_invertibility(unsigned long d, const Integer& p, unsigned long e, unsigned long frob);

// r + s sqrt(D)
struct QuadNumber {
  Integer D;
  Rational r, s;

  QuadNumber operator*(const QuadNumber& o) const;
  QuadNumber conj() const { return {D, r, -s}; }
  Rational norm() const { return r * r - D * s * s; }
  bool operator==(const QuadNumber& o) const { return D == o.D && r == o.r && s == o.s; }
  QuadNumber operator-() const { return {D, -r, -s}; }
};

struct ThetaSquare {
  Integer f;
  QuadNumber value;  // theta_chi^2 in Q(sqrt f)
  std::vector<unsigned long> half_system;
};

// theta_chi = prod_{a in A} (zeta_{2f}^a - zeta_{2f}^{-a}) for the real quadratic
// character of conductor f (a fundamental discriminant).
ThetaSquare theta_chi(const Integer& f);

struct CyclotomicIndex {
  Integer f;
  unsigned long exponent = 0;  // h' with theta^2 / sigma(theta^2) = sign * eps^(orientation 2h')
  int sign = 1;
  int orientation = 1;
  QuadNumber unit;
  unsigned precision_digits = 0;
};

CyclotomicIndex cyclotomic_unit_exponent(const Integer& f);

}  // namespace capitulab::cyclo
