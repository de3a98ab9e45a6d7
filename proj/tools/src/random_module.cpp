#include "capitulab/random_module.hpp"

#include "capitulab/arith.hpp"
#include "capitulab/modpoly.hpp"

#include <algorithm>

namespace capitulab::cli {

namespace {

struct Block {
  unsigned k;
  poly::Poly g;  // monic mod p^k
};

}  // namespace

RandomModule random_galois_module(std::mt19937_64& rng, unsigned long max_order, unsigned long max_d) {
  const unsigned long d = 1 + rng() % max_d;
  std::vector<long> ps;
  for (long q : {2, 3, 5, 7, 11, 13})
    if (d % q != 0 && static_cast<unsigned long>(q) <= max_order) ps.push_back(q);
  const Integer p(ps[rng() % ps.size()]);

  std::vector<Block> blocks;
  Integer budget(static_cast<unsigned long>(max_order));
  const unsigned pieces = 1 + rng() % 3;
  for (unsigned t = 0; t < pieces; ++t) {
    unsigned kmax = 0;
    while (arith::pow(p, kmax + 1) <= budget) ++kmax;
    if (kmax == 0) break;
    const unsigned k = 1 + rng() % kmax;
    const auto hf = galchar::factor_xd_minus_1(d, p, k);
    std::vector<std::size_t> fit;
    for (std::size_t i = 0; i < hf.factors.size(); ++i)
      if (arith::pow(p, k * static_cast<unsigned>(poly::degree(hf.factors[i]))) <= budget) fit.push_back(i);
    if (fit.empty()) break;
    const auto& g = hf.factors[fit[rng() % fit.size()]];
    budget /= arith::pow(p, k * static_cast<unsigned>(poly::degree(g)));
    blocks.push_back({k, g});
  }
  if (blocks.empty()) blocks.push_back({1, poly::Poly{Integer(-1), Integer(1)}});  // x - 1 on Z/p
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.k > b.k; });

  std::vector<Integer> divs;
  for (const auto& b : blocks)
    for (int i = 0; i < poly::degree(b.g); ++i) divs.push_back(arith::pow(p, b.k));
  const std::size_t r = divs.size();
  IntMatrix sigma(r, r);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    // x acting on (Z/p^k)[x]/(g) in the basis 1, x, ..., x^{deg-1}.
    const std::size_t deg = static_cast<std::size_t>(poly::degree(b.g));
    const Integer q = arith::pow(p, b.k);
    for (std::size_t i = 0; i + 1 < deg; ++i) sigma(off + i, off + i + 1) = 1;
    for (std::size_t j = 0; j < deg; ++j) sigma(off + deg - 1, off + j) = arith::mod(-b.g[j], q);
    off += deg;
  }

  // Conjugate by elementary automorphisms h_i = g_i + c g_j, valid when d_i c = 0 mod d_j.
  IntMatrix A = IntMatrix::identity(r), Ainv = IntMatrix::identity(r);
  const unsigned ops = r > 1 ? static_cast<unsigned>(3 * r) : 0;
  for (unsigned t = 0; t < ops; ++t) {
    const std::size_t i = rng() % r, j = rng() % r;
    if (i == j) continue;
    Integer c(static_cast<unsigned long>(rng() % 7)), step = 1;
    if (!mpz_divisible_p(divs[i].get_mpz_t(), divs[j].get_mpz_t())) step = divs[j] / gcd(divs[i], divs[j]);
    c *= step;
    if (c == 0) continue;
    IntMatrix E = IntMatrix::identity(r), Einv = IntMatrix::identity(r);
    E(i, j) = c;
    Einv(i, j) = -c;
    A = E * A;
    Ainv = Ainv * Einv;
  }
  IntMatrix s = A * sigma * Ainv;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s(i, j) = arith::mod(s(i, j), divs[j]);
  return {p, galchar::GaloisModule(abgroup::FinAbGroup(divs), s, d)};
}

std::optional<std::string> check_decomposition(const galchar::GaloisModule& module, const galchar::Decomposition& dec) {
  const auto& G = module.group();
  Integer total = 1;
  std::vector<abgroup::GroupVec> all;
  for (const auto& c : dec.components) {
    for (const auto& g : c.subgroup.generators())
      if (!c.subgroup.contains(module.apply(g))) return c.phi.label() + " is not sigma-stable";
    total *= c.subgroup.order();
    all.insert(all.end(), c.subgroup.generators().begin(), c.subgroup.generators().end());
    // The sum so far is direct exactly when its order is the product of the parts.
    if (abgroup::subgroup_from_vecs(G, all).order() != total)
      return c.phi.label() + " meets the earlier components";
  }
  if (total != G.order()) return "component orders multiply to " + total.get_str() + ", not " + G.order().get_str();
  const auto hf = galchar::factor_xd_minus_1(module.d(), dec.p, dec.precision);
  poly::Poly prod{1};
  for (const auto& f : hf.factors) prod = poly::reduce(poly::mul(prod, f), hf.modulus);
  poly::Poly target = poly::monomial(1, module.d());
  target[0] = -1;
  if (prod != poly::reduce(target, hf.modulus)) return "Hensel factors do not multiply to x^d - 1";
  return std::nullopt;
}

}  // namespace capitulab::cli
