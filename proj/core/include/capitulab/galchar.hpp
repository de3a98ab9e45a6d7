#pragma once

#include "capitulab/abgroup.hpp"
#include "capitulab/common.hpp"
#include "capitulab/intmatrix.hpp"
#include "capitulab/modpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace capitulab::galchar {

// Class of a rational character of Z/d under psi -> psi^p. The character of order e
// sending 1 to zeta_e^a is identified with the residue a mod e.
struct PadicCharacter {
  unsigned long d = 1;
  unsigned long e = 1;
  std::vector<unsigned long> orbit;  // sorted residues mod e
  unsigned long degree = 1;

  bool is_trivial() const { return e == 1; }
  std::string label() const;  // "phi(e=3;1,2)"
  bool operator==(const PadicCharacter&) const = default;
};

std::vector<PadicCharacter> enumerate_phi(unsigned long d, const Integer& p);

// One factor per p-adic character, listed in the order of enumerate_phi.
struct HenselFactorization {
  unsigned long d = 1;
  Integer p;
  unsigned precision = 1;
  Integer modulus;  // p^precision
  std::vector<PadicCharacter> characters;
  std::vector<poly::Poly> residue_factors;  // mod p
  std::vector<poly::Poly> factors;          // mod p^precision, monic
};

HenselFactorization factor_xd_minus_1(unsigned long d, const Integer& p, unsigned precision);

// Finite p-group with an automorphism sigma of order dividing d. Row i of sigma is the
// image of the i-th generator.
class GaloisModule {
public:
  GaloisModule(abgroup::FinAbGroup group, IntMatrix sigma, unsigned long d);

  const abgroup::FinAbGroup& group() const { return group_; }
  const IntMatrix& sigma() const { return sigma_; }
  unsigned long d() const { return d_; }

  abgroup::GroupVec apply(const abgroup::GroupVec& v) const;
  // Matrix of sum_k c_k sigma^k with entries reduced per column.
  IntMatrix evaluate(const poly::Poly& c) const;

private:
  IntMatrix reduce_cols(IntMatrix m) const;
  abgroup::FinAbGroup group_;
  IntMatrix sigma_;
  unsigned long d_;
};

struct Component {
  PadicCharacter phi;
  poly::Poly idempotent;  // in (Z/p^M)[x]/(x^d - 1)
  abgroup::Subgroup subgroup;
};

struct Decomposition {
  Integer p;
  unsigned precision = 1;
  std::vector<Component> components;

  const Component& trivial() const { return components.front(); }
};

Decomposition decompose(const GaloisModule& module, const Integer& p);

// k with order = q^(rho k) for a prime q; empty when order is not of that shape.
std::optional<unsigned> monogenic_exponent(const Integer& order, unsigned long rho);

// Inverts P(t) = prod_{t' | t} A(t') over the divisors t of d.
std::map<unsigned long, Rational> chi_resolve(unsigned long d,
                                              const std::map<unsigned long, Rational>& per_subfield,
                                              bool require_integral = false);

}  // namespace capitulab::galchar
