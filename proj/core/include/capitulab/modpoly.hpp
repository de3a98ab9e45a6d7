#pragma once

#include "capitulab/common.hpp"

#include <string>
#include <tuple>
#include <vector>

// Dense univariate polynomials, coefficient i belongs to x^i. Zero is the empty vector.
namespace capitulab::poly {

using Poly = std::vector<Integer>;

void trim(Poly& a);
long degree(const Poly& a);  // -1 for zero
Poly monomial(const Integer& c, std::size_t k);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Integer& k);
Integer eval(const Poly& a, const Integer& x);
Poly derivative(const Poly& a);
// a(x + t)
Poly taylor_shift(const Poly& a, const Integer& t);

// Coefficientwise reduction into [0, n).
Poly reduce(const Poly& a, const Integer& n);
Poly add_mod(const Poly& a, const Poly& b, const Integer& n);
Poly sub_mod(const Poly& a, const Poly& b, const Integer& n);
Poly mul_mod(const Poly& a, const Poly& b, const Integer& n);

// Division by a monic polynomial over Z/n.
std::pair<Poly, Poly> divrem_monic(const Poly& a, const Poly& b, const Integer& n);
Poly rem_monic(const Poly& a, const Poly& b, const Integer& n);

// Division over the field F_p (b nonzero).
std::pair<Poly, Poly> divrem_field(const Poly& a, const Poly& b, const Integer& p);
Poly make_monic(const Poly& a, const Integer& p);
// (g, s, t) with s a + t b = g, g monic gcd over F_p.
std::tuple<Poly, Poly, Poly> xgcd_field(const Poly& a, const Poly& b, const Integer& p);

// base^e mod (m, n) with m monic.
Poly powmod(const Poly& base, const Integer& e, const Poly& m, const Integer& n);

// PARI style rendering, e.g. "x^3 + x^2 - 54*x - 169".
std::string format(const Poly& a, const std::string& var = "x");

}  // namespace capitulab::poly
