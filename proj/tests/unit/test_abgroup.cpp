#include "capitulab/abgroup.hpp"
#include "capitulab/arith.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

using namespace capitulab;
using namespace capitulab::abgroup;

namespace {

using Elem = std::vector<long>;

std::vector<long> small(const FinAbGroup& g) {
  std::vector<long> d;
  for (const auto& x : g.divisors()) d.push_back(x.get_si());
  return d;
}

std::vector<Elem> all_elements(const std::vector<long>& d) {
  std::vector<Elem> out{Elem(d.size(), 0)};
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<Elem> next;
    for (const auto& e : out)
      for (long v = 0; v < d[i]; ++v) {
        Elem f = e;
        f[i] = v;
        next.push_back(f);
      }
    out = next;
  }
  return out;
}

// Breadth-first span of the generators.
std::set<Elem> closure(const std::vector<long>& d, const std::vector<Elem>& gens) {
  std::set<Elem> seen{Elem(d.size(), 0)};
  std::vector<Elem> frontier{Elem(d.size(), 0)};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Elem y(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) y[i] = (x[i] + g[i]) % d[i];
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = next;
  }
  return seen;
}

// #{x in S : kx = 0}
std::size_t killed_by(const std::set<Elem>& s, const std::vector<long>& d, long k) {
  std::size_t c = 0;
  for (const auto& x : s) {
    bool z = true;
    for (std::size_t i = 0; i < d.size(); ++i) z = z && (k * x[i]) % d[i] == 0;
    c += z;
  }
  return c;
}

std::size_t predicted_killed(const FinAbGroup& h, long k) {
  std::size_t c = 1;
  for (const auto& x : h.divisors()) c *= std::gcd(x.get_si(), k);
  return c;
}

void all_shapes(long bound, long maxd, std::vector<long>& cur, long prod, std::vector<std::vector<long>>& out) {
  out.push_back(cur);
  for (long x = 2; x <= maxd && prod * x <= bound; ++x) {
    if (!cur.empty() && cur.back() % x != 0) continue;
    cur.push_back(x);
    all_shapes(bound, x, cur, prod * x, out);
    cur.pop_back();
  }
}

std::vector<std::vector<long>> shapes_up_to(long bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  all_shapes(bound, bound, cur, 1, out);
  return out;
}

std::vector<Integer> to_int(const Elem& e) { return std::vector<Integer>(e.begin(), e.end()); }

}  // namespace

TEST(FinAbGroup, ConstructionAndValidation) {
  EXPECT_EQ(FinAbGroup({12, 4}).order(), 48);
  EXPECT_TRUE(FinAbGroup().is_trivial());
  EXPECT_EQ(FinAbGroup().order(), 1);
  EXPECT_THROW(FinAbGroup({4, 8}), DomainError);
  EXPECT_THROW(FinAbGroup({4, 1}), DomainError);
  EXPECT_EQ(FinAbGroup::from_cyclic_orders({2, 4, 1, 3}).divisors(), (std::vector<Integer>{12, 2}));
  EXPECT_EQ(FinAbGroup({24, 8, 2, 2}).str(), "[24,8,2,2]");
}

TEST(Subgroup, TransferImageExamples) {
  const FinAbGroup g4422({4, 4, 2, 2});
  const auto s = subgroup_from_rows(g4422, {{0, 0, 0, 1}, {2, 2, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  EXPECT_EQ(s.order(), 4);
  EXPECT_EQ(s.structure(), FinAbGroup({2, 2}));
  const auto t = subgroup_from_rows(FinAbGroup({9, 3}), {{3, 0}, {0, 0}});
  EXPECT_EQ(t.order(), 3);
  EXPECT_EQ(t.structure(), FinAbGroup({3}));
  const auto z = subgroup_from_rows(g4422, {{0, 0, 0, 0}});
  EXPECT_TRUE(z.structure().is_trivial());
  EXPECT_EQ(z.quotient(), g4422);
}

TEST(Subgroup, RowArityErrorNamesRow) {
  try {
    subgroup_from_rows(FinAbGroup({4, 4}), {{1, 0}, {1, 0, 0}});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST(Subgroup, AgreesWithBruteForceClosure) {
  std::mt19937_64 rng(7);
  std::size_t checked = 0;
  for (const auto& d : shapes_up_to(256)) {
    if (d.empty()) continue;
    const FinAbGroup G(std::vector<Integer>(d.begin(), d.end()));
    const auto elems = all_elements(d);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Elem> gens;
      const std::size_t k = 1 + rng() % 3;
      for (std::size_t j = 0; j < k; ++j) gens.push_back(elems[rng() % elems.size()]);
      std::vector<std::vector<Integer>> rows;
      for (const auto& g : gens) rows.push_back(to_int(g));
      const auto S = subgroup_from_rows(G, rows);
      const auto span = closure(d, gens);
      ASSERT_EQ(S.order(), span.size());
      ASSERT_EQ(S.order() * S.quotient().order(), G.order());
      for (long q = 1; q <= small(G).front(); ++q)
        if (small(G).front() % q == 0) {
          ASSERT_EQ(predicted_killed(S.structure(), q), killed_by(span, d, q));
        }
      for (const auto& x : elems) ASSERT_EQ(S.contains(GroupVec(G, to_int(x))), span.count(x) == 1);
      ++checked;
    }
  }
  EXPECT_GT(checked, 600u);
}

TEST(Subgroup, StructureInvariantUnderRowOperations) {
  std::mt19937_64 rng(13);
  const FinAbGroup G({24, 8, 2, 2});
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<Integer>> rows(3, std::vector<Integer>(4));
    for (auto& r : rows)
      for (std::size_t j = 0; j < 4; ++j) r[j] = static_cast<long>(rng() % 50);
    const auto base = subgroup_from_rows(G, rows);
    auto mixed = rows;
    for (int k = 0; k < 6; ++k) {
      const std::size_t i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      const long c = static_cast<long>(rng() % 9) - 4;
      for (std::size_t col = 0; col < 4; ++col) mixed[i][col] += c * mixed[j][col];
    }
    std::swap(mixed[0], mixed[2]);
    ASSERT_EQ(subgroup_from_rows(G, mixed).structure(), base.structure());
  }
}

TEST(GroupOps, ElementOrder) {
  EXPECT_EQ(element_order(FinAbGroup({27}), GroupVec(FinAbGroup({27}), {3})), 9);
  EXPECT_EQ(element_order(FinAbGroup({4, 4, 2, 2}), GroupVec::zero(FinAbGroup({4, 4, 2, 2}))), 1);
  EXPECT_EQ(element_order(FinAbGroup({4, 4, 2, 2}), GroupVec(FinAbGroup({4, 4, 2, 2}), {2, 2, 1, 1})), 2);
}

TEST(GroupOps, TorsionAndPrimaryParts) {
  EXPECT_EQ(torsion_subgroup(FinAbGroup({9, 3}), 3), FinAbGroup({3, 3}));
  EXPECT_EQ(torsion_subgroup(FinAbGroup({3, 3}), 3), FinAbGroup({3, 3}));
  EXPECT_TRUE(torsion_subgroup(FinAbGroup(), 5).is_trivial());
  EXPECT_EQ(p_primary(FinAbGroup({24, 8, 2, 2}), 2).part, FinAbGroup({8, 8, 2, 2}));
  EXPECT_EQ(p_primary(FinAbGroup({12, 4}), 2).part, FinAbGroup({4, 4}));
  EXPECT_TRUE(p_primary(FinAbGroup({9, 3}), 2).part.is_trivial());
  EXPECT_EQ(p_primary(FinAbGroup({292, 4, 4, 4}), 2).part, FinAbGroup({4, 4, 4, 4}));
}

TEST(GroupOps, PrimaryProjectionIsAHomomorphismOntoThePart) {
  const FinAbGroup G({292, 4, 4, 4});
  const auto P = p_primary(G, 2);
  const FinAbGroup& H = P.part;
  std::mt19937_64 rng(19);
  for (int t = 0; t < 300; ++t) {
    std::vector<Integer> a(4), b(4);
    for (std::size_t j = 0; j < 4; ++j) {
      a[j] = static_cast<unsigned long>(rng() % 292);
      b[j] = static_cast<unsigned long>(rng() % 292);
    }
    const GroupVec x(G, a), y(G, b);
    ASSERT_EQ(P.project(add(G, x, y)), add(H, P.project(x), P.project(y)));
  }
  // The 73-part is killed.
  EXPECT_TRUE(P.project(GroupVec(G, {4, 0, 0, 0})).is_zero());
  EXPECT_EQ(P.project(GroupVec(G, {146, 0, 2, 0})).coords(), (std::vector<Integer>{2, 0, 2, 0}));
}

TEST(GroupOps, PowerMapImage) {
  const FinAbGroup G44({4, 4});
  EXPECT_TRUE(power_map_image(G44, subgroup_from_rows(G44, {{1, 0}, {0, 1}}), 4).structure().is_trivial());
  const FinAbGroup G9({9});
  EXPECT_EQ(power_map_image(G9, subgroup_from_rows(G9, {{1}}), 3).order(), 3);
  const FinAbGroup G8822({8, 8, 2, 2});
  const auto all = subgroup_from_rows(G8822, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  EXPECT_EQ(power_map_image(G8822, all, 2).structure(), FinAbGroup({4, 4}));
}

TEST(GroupOps, QuotientOrderAndExponent) {
  const FinAbGroup G({9, 3});
  EXPECT_EQ(quotient_order(subgroup_from_rows(G, {{3, 0}})), 9);
  EXPECT_EQ(quotient_order(subgroup_from_rows(G, {{1, 0}, {0, 1}})), 1);
  EXPECT_EQ(quotient_order(subgroup_from_rows(G, {{0, 0}})), 27);
  EXPECT_EQ(exponent(FinAbGroup({4, 4})), 4);
  EXPECT_EQ(exponent(FinAbGroup()), 1);
  EXPECT_EQ(exponent(FinAbGroup({9, 3})), 9);
}

TEST(GroupOps, PowerImageTimesTorsionIsOrderExhaustive) {
  for (const auto& d : shapes_up_to(512)) {
    const FinAbGroup G(std::vector<Integer>(d.begin(), d.end()));
    std::vector<std::vector<Integer>> id;
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<Integer> r(d.size());
      r[i] = 1;
      id.push_back(r);
    }
    const auto all = subgroup_from_rows(G, id);
    for (long k = 1; k <= 16; ++k)
      ASSERT_EQ(power_map_image(G, all, k).order() * torsion_subgroup(G, k).order(), G.order())
          << G.str() << " k=" << k;
  }
}
