#include "capitulab/abgroup.hpp"

#include <algorithm>

#include "capitulab/arith.hpp"

namespace capitulab::abgroup {

FinAbGroup::FinAbGroup(std::vector<Integer> divisors) : d_(std::move(divisors)) {
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 2) throw DomainError("FinAbGroup: divisor " + d_[i].get_str() + " is below 2");
    if (i > 0 && !mpz_divisible_p(d_[i - 1].get_mpz_t(), d_[i].get_mpz_t()))
      throw DomainError("FinAbGroup: " + format_list(d_) + " is not a divisor chain");
  }
}

FinAbGroup FinAbGroup::from_cyclic_orders(const std::vector<Integer>& orders) {
  for (const auto& n : orders)
    if (n < 1) throw DomainError("FinAbGroup: cyclic order must be positive");
  std::vector<Integer> diag = smith_diagonal(IntMatrix::diagonal(orders));
  std::vector<Integer> d;
  for (auto it = diag.rbegin(); it != diag.rend(); ++it)
    if (*it != 1) d.push_back(*it);
  return FinAbGroup(d);
}

Integer FinAbGroup::order() const {
  Integer n = 1;
  for (const auto& x : d_) n *= x;
  return n;
}

GroupVec::GroupVec(const FinAbGroup& g, std::vector<Integer> coords) : c_(std::move(coords)) {
  if (c_.size() != g.rank())
    throw DomainError("GroupVec: expected " + std::to_string(g.rank()) + " coordinates, got " +
                      std::to_string(c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = arith::mod(c_[i], g.divisors()[i]);
}

GroupVec GroupVec::zero(const FinAbGroup& g) { return GroupVec(g, std::vector<Integer>(g.rank())); }

bool GroupVec::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
}

GroupVec add(const FinAbGroup& g, const GroupVec& a, const GroupVec& b) {
  std::vector<Integer> c(g.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
  return GroupVec(g, c);
}

GroupVec scale(const FinAbGroup& g, const GroupVec& a, const Integer& k) {
  std::vector<Integer> c(g.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] * k;
  return GroupVec(g, c);
}

namespace {

FinAbGroup group_from_diagonal(const std::vector<Integer>& diag) {
  std::vector<Integer> d;
  for (auto it = diag.rbegin(); it != diag.rend(); ++it) {
    if (*it == 0) throw DomainError("subgroup structure: infinite factor");
    if (*it != 1) d.push_back(*it);
  }
  return FinAbGroup(d);
}

}  // namespace

Subgroup subgroup_from_rows(const FinAbGroup& ambient, const std::vector<std::vector<Integer>>& rows) {
  const std::size_t r = ambient.rank();
  Subgroup s;
  s.ambient_ = ambient;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != r)
      throw DomainError("subgroup_from_rows: row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, ambient rank is " +
                        std::to_string(r));
    GroupVec v(ambient, rows[i]);
    if (!v.is_zero()) s.gens_.push_back(v);
  }
  const std::size_t k = s.gens_.size();

  s.lattice_ = IntMatrix(0, r);
  for (const auto& g : s.gens_) s.lattice_.append_row(g.coords());
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Integer> e(r);
    e[i] = ambient.divisors()[i];
    s.lattice_.append_row(e);
  }
  s.quotient_ = group_from_diagonal(smith_diagonal(s.lattice_));

  if (k == 0) {
    s.structure_ = FinAbGroup();
  } else {
    // Relations among the generators: the first k coordinates of the left kernel.
    IntMatrix ker = left_kernel(s.lattice_);
    IntMatrix rel(0, k);
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      const std::vector<Integer> full = ker.row(i);
      std::vector<Integer> row(full.begin(), full.begin() + k);
      rel.append_row(row);
    }
    std::vector<Integer> diag = smith_diagonal(rel);
    diag.resize(k, Integer(0));  // fewer relations than generators means an infinite factor
    s.structure_ = group_from_diagonal(diag);
  }
  if (s.structure_.order() * s.quotient_.order() != ambient.order())
    throw std::logic_error("subgroup_from_rows: order bookkeeping mismatch");
  return s;
}

Subgroup subgroup_from_vecs(const FinAbGroup& ambient, const std::vector<GroupVec>& gens) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : gens) rows.push_back(g.coords());
  return subgroup_from_rows(ambient, rows);
}

bool Subgroup::contains(const GroupVec& v) const {
  if (v.size() != ambient_.rank()) throw DomainError("Subgroup::contains: dimension mismatch");
  return in_row_lattice(lattice_, v.coords());
}

Integer element_order(const FinAbGroup& g, const GroupVec& v) {
  if (v.size() != g.rank()) throw DomainError("element_order: dimension mismatch");
  Integer ord = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const Integer& d = g.divisors()[i];
    ord = arith::lcm(ord, d / arith::gcd(d, v.coords()[i]));
  }
  return ord;
}

FinAbGroup torsion_subgroup(const FinAbGroup& g, const Integer& k) {
  if (k < 1) throw DomainError("torsion_subgroup: k must be positive");
  std::vector<Integer> d;
  for (const auto& x : g.divisors()) {
    Integer t = arith::gcd(x, k);
    if (t != 1) d.push_back(t);
  }
  return FinAbGroup(d);
}

Integer exponent(const FinAbGroup& g) { return g.is_trivial() ? Integer(1) : g.divisors().front(); }

Integer quotient_order(const Subgroup& s) { return s.quotient().order(); }

Subgroup power_map_image(const FinAbGroup& g, const Subgroup& s, const Integer& k) {
  if (!(s.ambient() == g)) throw DomainError("power_map_image: subgroup of a different group");
  std::vector<GroupVec> gens;
  for (const auto& v : s.generators()) gens.push_back(scale(g, v, k));
  return subgroup_from_vecs(g, gens);
}

PPrimary p_primary(const FinAbGroup& g, const Integer& p) {
  if (!arith::is_prime(p)) throw DomainError("p_primary: " + p.get_str() + " is not prime");
  PPrimary out;
  out.p = p;
  out.source = g;
  std::vector<Integer> part;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const Integer& d = g.divisors()[i];
    unsigned v = mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) ? arith::valuation(d, p) : 0;
    if (v == 0) continue;
    Integer pv = arith::pow(p, v);
    Integer q = d / pv;
    out.kept.push_back(i);
    out.prime_powers.push_back(pv);
    out.idempotents.push_back(arith::mod(q * arith::inverse_mod(q, pv), d));
    part.push_back(pv);
  }
  out.part = FinAbGroup(part);
  return out;
}

std::vector<Integer> PPrimary::project_row(const std::vector<Integer>& row) const {
  if (row.size() != source.rank()) throw DomainError("p-part projection: dimension mismatch");
  std::vector<Integer> out;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    std::size_t i = kept[j];
    Integer x = arith::mod(row[i] * idempotents[j], source.divisors()[i]);
    out.push_back(arith::mod(x, prime_powers[j]));
  }
  return out;
}

GroupVec PPrimary::project(const GroupVec& v) const { return GroupVec(part, project_row(v.coords())); }

}  // namespace capitulab::abgroup
