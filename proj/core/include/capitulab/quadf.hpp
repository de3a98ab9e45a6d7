#pragma once

#include "capitulab/abgroup.hpp"
#include "capitulab/common.hpp"

#include <map>
#include <vector>

namespace capitulab::quadf {

// a x^2 + b x y + c y^2
struct QuadForm {
  Integer a, b, c;

  Integer disc() const { return b * b - 4 * a * c; }
  auto operator<=>(const QuadForm& o) const;
  bool operator==(const QuadForm& o) const = default;
};

inline auto QuadForm::operator<=>(const QuadForm& o) const {
  if (int r = cmp(a, o.a)) return r <=> 0;
  if (int r = cmp(b, o.b)) return r <=> 0;
  return cmp(c, o.c) <=> 0;
}

// m if m = 1 mod 4, else 4m; m squarefree, m > 1.
Integer fundamental_discriminant(const Integer& m);

bool is_reduced(const QuadForm& f);
QuadForm rho(const QuadForm& f);
// A reduced form properly equivalent to f.
QuadForm reduce(const QuadForm& f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm principal_form(const Integer& D);

std::vector<QuadForm> reduced_forms(const Integer& D);

// Reduced forms of discriminant D grouped into narrow classes (rho cycles) and wide
// classes (a cycle merged with the cycle of its mirror (-a, b, -c)).
class ClassTable {
public:
  explicit ClassTable(const Integer& D);

  const Integer& discriminant() const { return D_; }
  std::size_t narrow_count() const { return narrow_reps_.size(); }
  std::size_t wide_count() const { return wide_reps_.size(); }

  std::size_t narrow_class(const QuadForm& f) const;
  std::size_t wide_class(const QuadForm& f) const;
  const QuadForm& narrow_rep(std::size_t i) const { return narrow_reps_[i]; }
  const QuadForm& wide_rep(std::size_t i) const { return wide_reps_[i]; }
  std::size_t narrow_identity() const { return narrow_class(principal_form(D_)); }
  std::size_t wide_identity() const { return wide_class(principal_form(D_)); }
  std::size_t narrow_mul(std::size_t i, std::size_t j) const;
  std::size_t wide_mul(std::size_t i, std::size_t j) const;

private:
  Integer D_;
  std::map<QuadForm, std::size_t> form_to_narrow_;
  std::vector<std::size_t> narrow_to_wide_;
  std::vector<QuadForm> narrow_reps_;  // a > 0
  std::vector<QuadForm> wide_reps_;    // a > 0
};

struct QuadClassGroup {
  Integer m;
  Integer D;
  abgroup::FinAbGroup wide;
  abgroup::FinAbGroup narrow;
  int unit_norm = -1;  // norm of the fundamental unit, read off wide vs narrow
  std::size_t reduced_form_count = 0;
};

struct ClassGroupOptions {
  Integer max_discriminant{"10000000000"};
};

QuadClassGroup class_group(const Integer& m, const ClassGroupOptions& opt = {});
abgroup::FinAbGroup p_class_group(const Integer& m, const Integer& p);

// epsilon = (x + y sqrt(D)) / 2, the smallest unit above 1.
struct FundamentalUnit {
  Integer D;
  Integer x, y;
  int norm = 1;
};

FundamentalUnit fundamental_unit(const Integer& m);

bool is_inert(const Integer& m, const Integer& ell);
// Primes ell <= bound with ell = 1 mod 2p^N that are inert in Q(sqrt m).
std::vector<Integer> inert_prime_stream(const Integer& m, const Integer& p, unsigned N, const Integer& bound);

}  // namespace capitulab::quadf
