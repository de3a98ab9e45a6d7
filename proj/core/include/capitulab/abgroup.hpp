#pragma once

#include "capitulab/common.hpp"
#include "capitulab/intmatrix.hpp"

#include <vector>

namespace capitulab::abgroup {

// Z/d_1 x ... x Z/d_r with d_{i+1} | d_i and every d_i >= 2; the empty list is the
// trivial group.
class FinAbGroup {
public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<Integer> divisors);

  // Any list of cyclic orders (entries >= 1), normalised to the divisor chain.
  static FinAbGroup from_cyclic_orders(const std::vector<Integer>& orders);

  const std::vector<Integer>& divisors() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  bool is_trivial() const { return d_.empty(); }
  Integer order() const;
  std::string str() const { return format_list(d_); }

  bool operator==(const FinAbGroup&) const = default;

private:
  std::vector<Integer> d_;
};

// Element of an ambient group in the coordinates of its cyclic generators.
class GroupVec {
public:
  GroupVec() = default;
  GroupVec(const FinAbGroup& g, std::vector<Integer> coords);
  static GroupVec zero(const FinAbGroup& g);

  const std::vector<Integer>& coords() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const;
  bool operator==(const GroupVec&) const = default;

private:
  std::vector<Integer> c_;
};

GroupVec add(const FinAbGroup& g, const GroupVec& a, const GroupVec& b);
GroupVec scale(const FinAbGroup& g, const GroupVec& a, const Integer& k);

class Subgroup {
public:
  const FinAbGroup& ambient() const { return ambient_; }
  const std::vector<GroupVec>& generators() const { return gens_; }
  // Invariant factors of the subgroup itself.
  const FinAbGroup& structure() const { return structure_; }
  // Invariant factors of ambient / subgroup.
  const FinAbGroup& quotient() const { return quotient_; }
  Integer order() const { return structure_.order(); }
  bool contains(const GroupVec& v) const;

private:
  friend Subgroup subgroup_from_rows(const FinAbGroup&, const std::vector<std::vector<Integer>>&);
  FinAbGroup ambient_;
  std::vector<GroupVec> gens_;
  FinAbGroup structure_;
  FinAbGroup quotient_;
  IntMatrix lattice_;  // generators stacked over diag(divisors)
};

Subgroup subgroup_from_rows(const FinAbGroup& ambient, const std::vector<std::vector<Integer>>& rows);
Subgroup subgroup_from_vecs(const FinAbGroup& ambient, const std::vector<GroupVec>& gens);

Integer element_order(const FinAbGroup& g, const GroupVec& v);
// Structure of G[k] = {x : kx = 0}.
FinAbGroup torsion_subgroup(const FinAbGroup& g, const Integer& k);
Integer exponent(const FinAbGroup& g);
Integer quotient_order(const Subgroup& s);
// Subgroup generated by k times the generators of S.
Subgroup power_map_image(const FinAbGroup& g, const Subgroup& s, const Integer& k);

// p-primary part with the coordinate projection from the ambient group.
struct PPrimary {
  Integer p;
  FinAbGroup source;
  FinAbGroup part;
  std::vector<std::size_t> kept;         // source indices with p | d_i
  std::vector<Integer> idempotents;      // q (q^{-1} mod p^v) per kept divisor
  std::vector<Integer> prime_powers;     // p^v per kept divisor

  GroupVec project(const GroupVec& v) const;
  std::vector<Integer> project_row(const std::vector<Integer>& row) const;
};

PPrimary p_primary(const FinAbGroup& g, const Integer& p);

}  // namespace capitulab::abgroup
