#pragma once

#include "capitulab/abgroup.hpp"
#include "capitulab/common.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace capitulab::chevalley {

struct ChevalleyInput {
  Integer hK;                         // #H_K
  unsigned n = 1;                     // [L:K] = p^n
  Integer p;
  std::vector<Integer> ramification;  // e_q for the ramified places
  Integer norm_index = 1;             // (E_K : E_K cap N(L^*))
};

// #H_L^G = hK prod e_q / (p^n norm_index).
Integer ambiguous_number(const ChevalleyInput& in);

// Variant with [L cap H : K] = overlap where H is the p-Hilbert class field of K.
Integer ambiguous_number_hilbert_overlap(const ChevalleyInput& in, const Integer& overlap);

// #(H^{i+1}/H^i) = hK / #N(H^i).
Integer filtration_step(const Integer& hK, const Integer& norm_image_order);

struct FiltrationLedger {
  Integer hK;
  unsigned n = 1;
  std::vector<Integer> norm_image_orders;  // #N(H^i), i = 0..m, starting at 1
  std::vector<Integer> steps;              // #(H^{i+1}/H^i), i = 0..m

  Integer hL() const;
  // Empty when every invariant of the filtration holds.
  std::vector<std::string> violations() const;
};

// norm_images lists #N(H^i) for i >= 1 and must end at hK.
FiltrationLedger build_ledger(const Integer& hK, unsigned n, const std::vector<Integer>& norm_images);

// Picks the next norm image among the admissible candidates (all strictly larger).
using ChainSampler = std::function<Integer(const std::vector<Integer>&, std::mt19937_64&)>;

FiltrationLedger simulate_filtration(const abgroup::FinAbGroup& HK, unsigned n, std::uint64_t seed);
FiltrationLedger simulate_filtration(const abgroup::FinAbGroup& HK, unsigned n, std::uint64_t seed,
                                     const ChainSampler& sampler);

struct StabilityVerdict {
  bool stable = false;
  unsigned from_layer = 0;                      // n0
  std::optional<unsigned> capitulation_layer;  // empty when N is too small or not stable
  std::string kernel_rule;
};

// #H_{K_{n0}} = #H_{K_{n0+1}} gives stability from K_{n0}; H_K then capitulates in
// K_{n0 + e} where p^e is the exponent of H_K, provided n0 + e <= N.
StabilityVerdict stability_from_layer(unsigned n0, const Integer& h_n0, const Integer& h_next,
                                      unsigned e_K, unsigned N);
StabilityVerdict stability_criterion(const Integer& hK, const Integer& hK1, unsigned e, unsigned N);

// Ker(J_{K_n/K}) under stability from K.
abgroup::FinAbGroup stable_capitulation_kernel(const abgroup::FinAbGroup& HK, const Integer& p, unsigned n);

struct GrowthBound {
  Integer bound;  // #H_n * #H_n[p^gap]
};

GrowthBound growth_lower_bound(const abgroup::FinAbGroup& Hn, const Integer& p, unsigned gap);
// hK p^(n rK) for rK the p-rank of H_K.
Integer rank_growth_bound(const abgroup::FinAbGroup& HK, const Integer& p, unsigned n);
bool check_growth(const abgroup::FinAbGroup& Hn, const Integer& p, unsigned gap, const Integer& h_later);

struct MainConjectureLedger {
  Integer unit_norm_index;  // (E_K : N_{K_n/K}(E_{K_n})) restricted to phi
  Integer lower_bound;
  bool equality = false;    // set when capitulation is complete
};

MainConjectureLedger main_conjecture_ledger(const Integer& h_phi, const Integer& J_image_order, bool complete);

}  // namespace capitulab::chevalley
