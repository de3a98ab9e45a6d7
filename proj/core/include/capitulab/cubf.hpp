#pragma once

#include "capitulab/common.hpp"
#include "capitulab/modpoly.hpp"

#include <string>
#include <vector>

namespace capitulab::cubf {

// Cyclic cubic field of conductor f with 4f = a^2 + 27 b^2.
struct CyclicCubicField {
  Integer f;
  unsigned h3 = 0;  // v_3(f), 0 or 2
  Integer a, b;
  poly::Poly poly;  // monic cubic, coefficient i of x^i

  std::string poly_str() const { return poly::format(poly); }
};

bool is_cyclic_cubic_conductor(const Integer& f);
std::vector<Integer> enumerate_conductors(const Integer& bf, const Integer& Bf);

// Every representation in increasing b; the first is the canonical field.
std::vector<CyclicCubicField> defining_polynomials(const Integer& f);
CyclicCubicField defining_polynomial(const Integer& f);

// True when the monic integer polynomial has a root in Z_ell.
bool has_ell_adic_root(const poly::Poly& g, const Integer& ell);
bool is_inert(const CyclicCubicField& field, const Integer& ell);

// ell <= bound, ell = 1 mod modulus (2p^N unless overridden), ell not dividing f, inert.
std::vector<Integer> inert_primes(const CyclicCubicField& field, const Integer& p, unsigned N, const Integer& bound,
                                  const Integer& modulus_override = 0);

// Minimal polynomial of the Gaussian period of length (ell-1)/deg.
poly::Poly gaussian_period_poly(const Integer& ell, unsigned long deg);

}  // namespace capitulab::cubf
