#include "capitulab/chevalley.hpp"

#include <algorithm>

#include "capitulab/arith.hpp"

namespace capitulab::chevalley {

namespace {

Integer exact_div(const Integer& a, const Integer& b, const char* what) {
  if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw DomainError(std::string(what) + ": " + a.get_str() + " is not divisible by " + b.get_str());
  return a / b;
}

void validate(const ChevalleyInput& in) {
  if (in.hK < 1) throw DomainError("Chevalley input: hK must be positive");
  if (!arith::is_prime(in.p)) throw DomainError("Chevalley input: p must be prime");
  if (in.norm_index < 1) throw DomainError("Chevalley input: norm index must be positive");
  const Integer pn = arith::pow(in.p, in.n);
  for (const auto& e : in.ramification) {
    if (e < 1 || !mpz_divisible_p(pn.get_mpz_t(), e.get_mpz_t()))
      throw DomainError("Chevalley input: ramification index " + e.get_str() + " does not divide p^n");
  }
}

}  // namespace

Integer ambiguous_number(const ChevalleyInput& in) {
  validate(in);
  Integer num = in.hK;
  for (const auto& e : in.ramification) num *= e;
  return exact_div(num, arith::pow(in.p, in.n) * in.norm_index, "ambiguous_number");
}

Integer ambiguous_number_hilbert_overlap(const ChevalleyInput& in, const Integer& overlap) {
  validate(in);
  const Integer pn = arith::pow(in.p, in.n);
  if (overlap < 1) throw DomainError("ambiguous_number_hilbert_overlap: overlap must be positive");
  Integer in_H = exact_div(in.hK, overlap, "[H : L cap H]");
  Integer in_L = exact_div(pn, overlap, "[L : L cap H]");
  Integer num = in_H;
  for (const auto& e : in.ramification) num *= e;
  return exact_div(num, in_L * in.norm_index, "ambiguous_number_hilbert_overlap");
}

Integer filtration_step(const Integer& hK, const Integer& norm_image_order) {
  if (norm_image_order < 1) throw DomainError("filtration_step: norm image order must be positive");
  return exact_div(hK, norm_image_order, "filtration_step");
}

Integer FiltrationLedger::hL() const {
  Integer h = 1;
  for (const auto& s : steps) h *= s;
  return h;
}

std::vector<std::string> FiltrationLedger::violations() const {
  std::vector<std::string> v;
  if (norm_image_orders.empty() || norm_image_orders.front() != 1)
    v.push_back("norm image chain must start at 1");
  if (norm_image_orders.size() != steps.size()) v.push_back("steps and norm images differ in length");
  for (std::size_t i = 0; i < norm_image_orders.size(); ++i) {
    const Integer& N = norm_image_orders[i];
    if (N < 1 || !mpz_divisible_p(hK.get_mpz_t(), N.get_mpz_t())) {
      v.push_back("norm image " + N.get_str() + " does not divide hK");
      continue;
    }
    if (i > 0 && !mpz_divisible_p(N.get_mpz_t(), norm_image_orders[i - 1].get_mpz_t()))
      v.push_back("norm images do not form a divisor chain at index " + std::to_string(i));
    if (i < steps.size() && steps[i] != hK / N)
      v.push_back("step " + std::to_string(i) + " differs from hK / #N(H^i)");
    if (i > 0 && i < steps.size() && steps[i] > steps[i - 1])
      v.push_back("steps increase at index " + std::to_string(i));
  }
  if (!norm_image_orders.empty() && norm_image_orders.back() != hK)
    v.push_back("norm images do not reach hK");
  if (!steps.empty() && steps.back() != 1) v.push_back("last step is not 1");
  return v;
}

FiltrationLedger build_ledger(const Integer& hK, unsigned n, const std::vector<Integer>& norm_images) {
  if (hK < 1) throw DomainError("build_ledger: hK must be positive");
  FiltrationLedger L;
  L.hK = hK;
  L.n = n;
  L.norm_image_orders.push_back(1);
  for (const auto& N : norm_images) {
    if (!mpz_divisible_p(N.get_mpz_t(), L.norm_image_orders.back().get_mpz_t()) ||
        N <= L.norm_image_orders.back())
      throw DomainError("build_ledger: norm images must strictly increase along a divisor chain");
    L.norm_image_orders.push_back(N);
  }
  for (const auto& N : L.norm_image_orders) L.steps.push_back(filtration_step(hK, N));
  if (L.norm_image_orders.back() != hK) throw DomainError("build_ledger: chain does not reach hK");
  return L;
}

FiltrationLedger simulate_filtration(const abgroup::FinAbGroup& HK, unsigned n, std::uint64_t seed) {
  return simulate_filtration(HK, n, seed, [](const std::vector<Integer>& c, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    return c[pick(rng)];
  });
}

FiltrationLedger simulate_filtration(const abgroup::FinAbGroup& HK, unsigned n, std::uint64_t seed,
                                     const ChainSampler& sampler) {
  const Integer hK = HK.order();
  const auto divs = arith::divisors(hK);
  std::mt19937_64 rng(seed);
  std::vector<Integer> chain;
  Integer cur = 1;
  while (cur != hK) {
    std::vector<Integer> cand;
    for (const auto& d : divs)
      if (d > cur && mpz_divisible_p(d.get_mpz_t(), cur.get_mpz_t())) cand.push_back(d);
    Integer next = sampler(cand, rng);
    if (std::find(cand.begin(), cand.end(), next) == cand.end())
      throw DomainError("simulate_filtration: sampler returned an inadmissible order");
    chain.push_back(next);
    cur = next;
  }
  return build_ledger(hK, n, chain);
}

StabilityVerdict stability_from_layer(unsigned n0, const Integer& h_n0, const Integer& h_next,
                                      unsigned e_K, unsigned N) {
  if (h_n0 < 1 || !mpz_divisible_p(h_next.get_mpz_t(), h_n0.get_mpz_t()))
    throw DomainError("stability: " + h_n0.get_str() + " does not divide " + h_next.get_str());
  StabilityVerdict v;
  v.from_layer = n0;
  v.stable = h_n0 == h_next;
  if (!v.stable) return v;
  v.kernel_rule = "Ker(J_{K_n/K_" + std::to_string(n0) + "}) = H_{K_" + std::to_string(n0) +
                  "}[p^(n-" + std::to_string(n0) + ")]";
  if (n0 + e_K <= N) v.capitulation_layer = n0 + e_K;
  return v;
}

StabilityVerdict stability_criterion(const Integer& hK, const Integer& hK1, unsigned e, unsigned N) {
  StabilityVerdict v = stability_from_layer(0, hK, hK1, e, N);
  if (v.stable) v.kernel_rule = "Ker(J_{K_n/K}) = H_K[p^n]";
  return v;
}

abgroup::FinAbGroup stable_capitulation_kernel(const abgroup::FinAbGroup& HK, const Integer& p, unsigned n) {
  return abgroup::torsion_subgroup(HK, arith::pow(p, n));
}

GrowthBound growth_lower_bound(const abgroup::FinAbGroup& Hn, const Integer& p, unsigned gap) {
  return {Hn.order() * abgroup::torsion_subgroup(Hn, arith::pow(p, gap)).order()};
}

Integer rank_growth_bound(const abgroup::FinAbGroup& HK, const Integer& p, unsigned n) {
  const auto part = abgroup::p_primary(HK, p).part;
  return HK.order() * arith::pow(p, static_cast<unsigned long>(n) * part.rank());
}

bool check_growth(const abgroup::FinAbGroup& Hn, const Integer& p, unsigned gap, const Integer& h_later) {
  return h_later >= growth_lower_bound(Hn, p, gap).bound;
}

MainConjectureLedger main_conjecture_ledger(const Integer& h_phi, const Integer& J_image_order, bool complete) {
  if (J_image_order < 1) throw DomainError("main_conjecture_ledger: image order must be positive");
  Integer idx = exact_div(h_phi, J_image_order, "main_conjecture_ledger");
  return {idx, idx, complete};
}

}  // namespace capitulab::chevalley
