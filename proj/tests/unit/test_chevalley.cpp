#include "capitulab/arith.hpp"
#include "capitulab/chevalley.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace capitulab;
using namespace capitulab::chevalley;
using abgroup::FinAbGroup;

TEST(AmbiguousNumber, Examples) {
  EXPECT_EQ(ambiguous_number({27, 2, 3, {9}, 1}), 27);
  EXPECT_EQ(ambiguous_number({1, 1, 2, {2, 2}, 2}), 1);
  EXPECT_EQ(ambiguous_number({16, 1, 2, {2, 2}, 1}), 32);
  EXPECT_THROW(ambiguous_number({3, 1, 3, {3}, 9}), DomainError);
  EXPECT_THROW(ambiguous_number({3, 1, 3, {9}, 1}), DomainError);
}

TEST(AmbiguousNumber, SingleTotallyRamifiedPlaceGivesClassNumber) {
  for (long p : {2L, 3L, 5L, 7L})
    for (unsigned n = 1; n <= 6; ++n)
      for (unsigned a = 0; a <= 8; ++a) {
        const Integer h = arith::pow(p, a) * (p == 2 ? 3 : 2);
        ASSERT_EQ(ambiguous_number({h, n, p, {arith::pow(p, n)}, 1}), h);
      }
}

TEST(AmbiguousNumber, HilbertOverlap) {
  // L the cyclic unramified extension of degree hK.
  EXPECT_EQ(ambiguous_number_hilbert_overlap({9, 2, 3, {}, 1}, 9), 1);
  EXPECT_EQ(ambiguous_number_hilbert_overlap({16, 1, 2, {2, 2}, 1}, 1), ambiguous_number({16, 1, 2, {2, 2}, 1}));
  EXPECT_EQ(ambiguous_number_hilbert_overlap({9, 1, 3, {3}, 1}, 3), 9);
  EXPECT_THROW(ambiguous_number_hilbert_overlap({9, 1, 3, {3}, 1}, 9), DomainError);
}

TEST(Filtration, StepExamples) {
  EXPECT_EQ(filtration_step(9, 3), 3);
  EXPECT_EQ(filtration_step(27, 27), 1);
  EXPECT_EQ(filtration_step(16, 4), 4);
  EXPECT_THROW(filtration_step(9, 2), DomainError);
}

TEST(Filtration, LedgerExamples) {
  const auto L = build_ledger(9, 1, {3, 9});
  EXPECT_EQ(L.steps, (std::vector<Integer>{9, 3, 1}));
  EXPECT_EQ(L.hL(), 27);
  EXPECT_TRUE(L.violations().empty());

  const auto T = simulate_filtration(FinAbGroup(), 3, 1);
  EXPECT_EQ(T.steps, std::vector<Integer>{1});
  EXPECT_EQ(T.hL(), 1);

  const auto S = build_ledger(16, 2, {16});
  EXPECT_EQ(S.hL(), 16);
  EXPECT_EQ(S.steps.back(), 1);

  EXPECT_THROW(build_ledger(9, 1, {3}), DomainError);
  EXPECT_THROW(build_ledger(9, 1, {3, 3, 9}), DomainError);
}

TEST(Filtration, CorruptLedgerIsReported) {
  auto L = build_ledger(27, 1, {3, 27});
  L.steps[1] = 3;
  EXPECT_FALSE(L.violations().empty());
}

TEST(Filtration, SimulatedLedgersSatisfyInvariants) {
  std::mt19937_64 rng(2024);
  const std::vector<long> primes{2, 3, 5};
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const Integer p = primes[seed % 3];
    std::vector<Integer> orders;
    for (int i = 0, r = 1 + rng() % 3; i < r; ++i) orders.push_back(arith::pow(p, 1 + rng() % 4));
    const auto HK = FinAbGroup::from_cyclic_orders(orders);
    const auto L = simulate_filtration(HK, 1 + seed % 4, seed);
    ASSERT_TRUE(L.violations().empty()) << HK.str();
    ASSERT_EQ(L.steps.back(), 1);
    ASSERT_EQ(L.norm_image_orders.back(), HK.order());
    for (std::size_t i = 1; i < L.steps.size(); ++i) ASSERT_LE(L.steps[i], L.steps[i - 1]);
    Integer prod = 1;
    for (std::size_t i = 0; i < L.steps.size(); ++i) {
      ASSERT_EQ(L.steps[i] * L.norm_image_orders[i], HK.order());
      prod *= L.steps[i];
    }
    ASSERT_EQ(prod, L.hL());
  }
}

TEST(Filtration, SimulationIsReproducibleAndSamplerIsPluggable) {
  const FinAbGroup HK({27, 9});
  const auto a = simulate_filtration(HK, 2, 99), b = simulate_filtration(HK, 2, 99);
  EXPECT_EQ(a.norm_image_orders, b.norm_image_orders);
  // Always jumping to the largest candidate gives a two-step filtration.
  const auto big = simulate_filtration(HK, 2, 1, [](const std::vector<Integer>& c, std::mt19937_64&) {
    return *std::max_element(c.begin(), c.end());
  });
  EXPECT_EQ(big.norm_image_orders, (std::vector<Integer>{1, 243}));
  EXPECT_EQ(big.hL(), 243);
  // The smallest candidate walks through every p-power.
  const auto slow = simulate_filtration(HK, 2, 1, [](const std::vector<Integer>& c, std::mt19937_64&) {
    return *std::min_element(c.begin(), c.end());
  });
  EXPECT_EQ(slow.steps.size(), 6u);
}

TEST(Stability, Examples) {
  const auto s = stability_criterion(9, 9, 2, 2);
  EXPECT_TRUE(s.stable);
  EXPECT_EQ(s.capitulation_layer, 2u);
  EXPECT_EQ(s.kernel_rule, "Ker(J_{K_n/K}) = H_K[p^n]");
  const auto u = stability_criterion(16, 64, 2, 2);
  EXPECT_FALSE(u.stable);
  EXPECT_FALSE(u.capitulation_layer.has_value());
  EXPECT_EQ(stability_criterion(1, 1, 0, 3).capitulation_layer, 0u);
  // Stable but the tower is too short to see the capitulation.
  const auto shortt = stability_criterion(27, 27, 3, 2);
  EXPECT_TRUE(shortt.stable);
  EXPECT_FALSE(shortt.capitulation_layer.has_value());
  EXPECT_THROW(stability_criterion(9, 12, 2, 2), DomainError);
}

TEST(Stability, FromLaterLayer) {
  const auto v = stability_from_layer(1, 81, 81, 2, 3);
  EXPECT_TRUE(v.stable);
  EXPECT_EQ(v.from_layer, 1u);
  EXPECT_EQ(v.capitulation_layer, 3u);
  EXPECT_FALSE(stability_from_layer(1, 81, 81, 2, 2).capitulation_layer.has_value());
}

TEST(Stability, MonotoneInDepth) {
  for (unsigned e = 0; e < 5; ++e)
    for (unsigned N = 0; N < 8; ++N) {
      const auto v = stability_criterion(arith::pow(3, e), arith::pow(3, e), e, N);
      ASSERT_TRUE(v.stable);
      for (unsigned M = N; M < 8; ++M) {
        const auto w = stability_criterion(arith::pow(3, e), arith::pow(3, e), e, M);
        ASSERT_TRUE(w.stable);
        if (v.capitulation_layer) {
          ASSERT_EQ(w.capitulation_layer, v.capitulation_layer);
        }
      }
    }
}

TEST(Stability, KernelIsTorsion) {
  EXPECT_EQ(stable_capitulation_kernel(FinAbGroup({9, 3}), 3, 1), FinAbGroup({3, 3}));
  EXPECT_EQ(stable_capitulation_kernel(FinAbGroup({9, 3}), 3, 2), FinAbGroup({9, 3}));
  EXPECT_TRUE(stable_capitulation_kernel(FinAbGroup({9, 3}), 3, 0).is_trivial());
}

TEST(Growth, Examples) {
  EXPECT_EQ(growth_lower_bound(FinAbGroup({3, 3}), 3, 1).bound, 81);
  EXPECT_EQ(growth_lower_bound(FinAbGroup(), 5, 4).bound, 1);
  EXPECT_EQ(growth_lower_bound(FinAbGroup({4, 2}), 2, 2).bound, 64);
  EXPECT_EQ(rank_growth_bound(FinAbGroup({4, 4}), 2, 2), 256);
  EXPECT_TRUE(check_growth(FinAbGroup({3, 3}), 3, 1, 81));
  EXPECT_FALSE(check_growth(FinAbGroup({3, 3}), 3, 1, 27));
}

TEST(MainConjecture, Examples) {
  const auto a = main_conjecture_ledger(16, 1, true);
  EXPECT_EQ(a.lower_bound, 16);
  EXPECT_TRUE(a.equality);
  const auto b = main_conjecture_ledger(16, 16, false);
  EXPECT_EQ(b.lower_bound, 1);
  EXPECT_FALSE(b.equality);
  const auto c = main_conjecture_ledger(4, 2, false);
  EXPECT_EQ(c.unit_norm_index, 2);
  EXPECT_EQ(c.lower_bound, 2);
  EXPECT_THROW(main_conjecture_ledger(9, 2, false), DomainError);
  for (long h : {1L, 2L, 4L, 8L, 64L})
    for (long j = 1; j <= h; j *= 2) ASSERT_EQ(main_conjecture_ledger(h, j, false).unit_norm_index * j, h);
}
