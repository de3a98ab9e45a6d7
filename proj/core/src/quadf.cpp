#include "capitulab/quadf.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "capitulab/arith.hpp"

namespace capitulab::quadf {

Integer fundamental_discriminant(const Integer& m) {
  if (m <= 1) throw DomainError("fundamental_discriminant: m must exceed 1, got " + m.get_str());
  if (!arith::is_squarefree(m)) throw DomainError("fundamental_discriminant: " + m.get_str() + " is not squarefree");
  return arith::mod(m, 4) == 1 ? m : Integer(4 * m);
}

namespace {

// b' = b mod 2|a| in the normalisation interval for discriminant root s = isqrt(D).
Integer normalize_b(const Integer& b, const Integer& a, const Integer& s) {
  const Integer A = abs(a);
  const Integer two_a = 2 * A;
  if (A > s) {
    Integer r = arith::mod(b, two_a);
    if (r > A) r -= two_a;
    return r;
  }
  return s - arith::mod(s - b, two_a);
}

QuadForm with_b(const Integer& a, const Integer& b, const Integer& D) {
  Integer num = b * b - D;
  Integer den = 4 * a;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) throw std::logic_error("form coefficient is not integral");
  return {a, b, num / den};
}

}  // namespace

bool is_reduced(const QuadForm& f) {
  const Integer D = f.disc();
  const Integer s = arith::isqrt(D);
  const Integer A2 = 2 * abs(f.a);
  return f.b >= 1 && f.b <= s && A2 + f.b >= s + 1 && A2 - f.b <= s;
}

QuadForm rho(const QuadForm& f) {
  const Integer D = f.disc();
  const Integer s = arith::isqrt(D);
  Integer b = normalize_b(-f.b, f.c, s);
  return with_b(f.c, b, D);
}

QuadForm reduce(const QuadForm& f) {
  const Integer D = f.disc();
  if (D <= 0 || arith::is_square(D)) throw DomainError("reduce: discriminant must be a positive non-square");
  if (f.a == 0) throw DomainError("reduce: leading coefficient is zero");
  const Integer s = arith::isqrt(D);
  QuadForm g = with_b(f.a, normalize_b(f.b, f.a, s), D);
  while (!is_reduced(g)) g = rho(g);
  return g;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const Integer D = f.disc();
  if (g.disc() != D) throw DomainError("compose: discriminants differ");
  const Integer h = (f.b + g.b) / 2;
  Integer e1, u1, v1;
  mpz_gcdext(e1.get_mpz_t(), u1.get_mpz_t(), v1.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
  Integer e, u2, w;
  mpz_gcdext(e.get_mpz_t(), u2.get_mpz_t(), w.get_mpz_t(), e1.get_mpz_t(), h.get_mpz_t());
  const Integer lam = u2 * u1, mu = u2 * v1, nu = w;
  const Integer a3 = f.a * g.a / (e * e);
  Integer B = lam * f.a * g.b + mu * g.a * f.b + nu * (f.b * g.b + D) / 2;
  if (!mpz_divisible_p(B.get_mpz_t(), e.get_mpz_t())) throw std::logic_error("compose: non-integral middle coefficient");
  B /= e;
  B = arith::mod(B, 2 * abs(a3));
  return reduce(with_b(a3, B, D));
}

QuadForm principal_form(const Integer& D) {
  Integer b = arith::mod(D, 2);
  return reduce(with_b(1, b, D));
}

std::vector<QuadForm> reduced_forms(const Integer& D) {
  const Integer s = arith::isqrt(D);
  std::vector<QuadForm> out;
  for (Integer b = arith::mod(D, 2) == 0 ? 2 : 1; b <= s; b += 2) {
    const Integer N = (D - b * b) / 4;
    for (const auto& A : arith::divisors(N)) {
      if (2 * A + b < s + 1 || 2 * A - b > s) continue;
      out.push_back({A, b, -N / A});
      out.push_back({-A, b, N / A});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClassTable::ClassTable(const Integer& D) : D_(D) {
  const auto forms = reduced_forms(D);
  std::vector<std::size_t> cycle_of(forms.size(), SIZE_MAX);
  std::map<QuadForm, std::size_t> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index[forms[i]] = i;
  std::size_t cycles = 0;
  std::vector<QuadForm> cycle_rep;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (cycle_of[i] != SIZE_MAX) continue;
    std::size_t j = i;
    std::optional<QuadForm> rep;
    while (cycle_of[j] == SIZE_MAX) {
      cycle_of[j] = cycles;
      if (forms[j].a > 0 && (!rep || forms[j] < *rep)) rep = forms[j];
      j = index.at(rho(forms[j]));
    }
    if (cycle_of[j] != cycles) throw std::logic_error("rho is not a permutation of reduced forms");
    cycle_rep.push_back(*rep);
    ++cycles;
  }
  for (std::size_t i = 0; i < forms.size(); ++i) form_to_narrow_[forms[i]] = cycle_of[i];
  narrow_reps_ = cycle_rep;

  std::vector<std::size_t> parent(cycles);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    QuadForm mirror{-forms[i].a, forms[i].b, -forms[i].c};
    std::size_t a = find(cycle_of[i]), b = find(form_to_narrow_.at(mirror));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::size_t> root_to_wide;
  narrow_to_wide_.resize(cycles);
  for (std::size_t c = 0; c < cycles; ++c) {
    std::size_t r = find(c);
    auto it = root_to_wide.find(r);
    if (it == root_to_wide.end()) {
      it = root_to_wide.emplace(r, wide_reps_.size()).first;
      wide_reps_.push_back(narrow_reps_[c]);
    }
    narrow_to_wide_[c] = it->second;
  }
}

std::size_t ClassTable::narrow_class(const QuadForm& f) const {
  if (f.disc() != D_) throw DomainError("ClassTable: discriminant mismatch");
  return form_to_narrow_.at(is_reduced(f) ? f : reduce(f));
}

std::size_t ClassTable::wide_class(const QuadForm& f) const { return narrow_to_wide_[narrow_class(f)]; }

std::size_t ClassTable::narrow_mul(std::size_t i, std::size_t j) const {
  return narrow_class(compose(narrow_reps_[i], narrow_reps_[j]));
}

std::size_t ClassTable::wide_mul(std::size_t i, std::size_t j) const {
  return wide_class(compose(wide_reps_[i], wide_reps_[j]));
}

namespace {

// Structure of a finite group given by its multiplication, generated incrementally
// from a candidate list (discrete logs by table lookup, relations fed to Smith form).
template <class Mul>
abgroup::FinAbGroup group_structure(std::size_t order, std::size_t identity, const std::vector<std::size_t>& candidates,
                                    Mul mul) {
  std::unordered_map<std::size_t, std::vector<Integer>> logs{{identity, {}}};
  std::vector<std::vector<Integer>> relations;
  std::size_t ngens = 0;
  for (std::size_t g : candidates) {
    if (logs.size() == order) break;
    if (logs.count(g)) continue;
    // Smallest k with g^k in the current subgroup.
    std::size_t x = g;
    unsigned long k = 1;
    while (!logs.count(x)) {
      x = mul(x, g);
      ++k;
    }
    std::vector<Integer> rel = logs.at(x);
    rel.resize(ngens + 1);
    for (auto& r : rel) r = -r;
    rel[ngens] = k;
    for (auto& old : relations) old.resize(ngens + 1);
    relations.push_back(rel);

    std::vector<std::pair<std::size_t, std::vector<Integer>>> current(logs.begin(), logs.end());
    std::size_t gj = identity;
    for (unsigned long j = 1; j < k; ++j) {
      gj = mul(gj, g);
      for (const auto& [elt, v] : current) {
        std::vector<Integer> w = v;
        w.resize(ngens + 1);
        w[ngens] = j;
        logs.emplace(mul(elt, gj), std::move(w));
      }
    }
    for (auto& [elt, v] : logs) v.resize(ngens + 1);
    ++ngens;
  }
  if (logs.size() != order) throw std::logic_error("class group: candidates do not generate the group");
  if (ngens == 0) return {};
  IntMatrix rel(0, ngens);
  for (auto& r : relations) {
    r.resize(ngens);
    rel.append_row(r);
  }
  auto diag = smith_diagonal(rel);
  return abgroup::FinAbGroup::from_cyclic_orders(diag);
}

std::vector<QuadForm> prime_forms(const Integer& D, const Integer& bound) {
  std::vector<QuadForm> out;
  for (auto q : arith::primes_in_range(2, bound.get_ui())) {
    const Integer Q(static_cast<unsigned long>(q));
    if (arith::kronecker(D, Q) == -1) continue;
    for (Integer b = 0; b < 2 * Q; ++b) {
      if (arith::mod(b * b - D, 4 * Q) == 0) {
        out.push_back(reduce({Q, b, (b * b - D) / (4 * Q)}));
        break;
      }
    }
  }
  return out;
}

}  // namespace

QuadClassGroup class_group(const Integer& m, const ClassGroupOptions& opt) {
  QuadClassGroup out;
  out.m = m;
  out.D = fundamental_discriminant(m);
  if (out.D > opt.max_discriminant)
    throw DomainError("class_group: discriminant " + out.D.get_str() + " exceeds the configured bound");
  ClassTable table(out.D);
  out.reduced_form_count = reduced_forms(out.D).size();

  const Integer mink = arith::isqrt(out.D) / 2 + 2;
  const auto primes = prime_forms(out.D, mink);

  std::vector<std::size_t> wide_cand, narrow_cand;
  for (const auto& f : primes) {
    wide_cand.push_back(table.wide_class(f));
    narrow_cand.push_back(table.narrow_class(f));
  }
  for (std::size_t i = 0; i < table.wide_count(); ++i) wide_cand.push_back(i);
  for (std::size_t i = 0; i < table.narrow_count(); ++i) narrow_cand.push_back(i);

  out.wide = group_structure(table.wide_count(), table.wide_identity(), wide_cand,
                             [&](std::size_t i, std::size_t j) { return table.wide_mul(i, j); });
  out.narrow = group_structure(table.narrow_count(), table.narrow_identity(), narrow_cand,
                               [&](std::size_t i, std::size_t j) { return table.narrow_mul(i, j); });
  out.unit_norm = table.narrow_count() == table.wide_count() ? -1 : 1;
  return out;
}

abgroup::FinAbGroup p_class_group(const Integer& m, const Integer& p) {
  return abgroup::p_primary(class_group(m).wide, p).part;
}

FundamentalUnit fundamental_unit(const Integer& m) {
  FundamentalUnit u;
  u.D = fundamental_discriminant(m);
  const bool one_mod_4 = arith::mod(u.D, 4) == 1;
  // Continued fraction of omega = (P + sqrt R) / Q.
  const Integer R = one_mod_4 ? u.D : m;
  const Integer r = arith::isqrt(R);
  Integer P = one_mod_4 ? 1 : 0, Q = one_mod_4 ? 2 : 1;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (;;) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), Integer(P + r).get_mpz_t(), Q.get_mpz_t());
    Integer h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    Integer norm = one_mod_4 ? Integer(h * h - h * k + k * k * (1 - u.D) / 4) : Integer(h * h - m * k * k);
    if (norm == 1 || norm == -1) {
      u.x = one_mod_4 ? Integer(2 * h - k) : Integer(2 * h);
      u.y = k;
      u.norm = norm == 1 ? 1 : -1;
      return u;
    }
    P = a * Q - P;
    Q = (R - P * P) / Q;
  }
}

bool is_inert(const Integer& m, const Integer& ell) {
  const Integer D = fundamental_discriminant(m);
  if (!arith::is_prime(ell)) throw DomainError("is_inert: " + ell.get_str() + " is not prime");
  if (mpz_divisible_p(D.get_mpz_t(), ell.get_mpz_t()))
    throw DomainError("is_inert: " + ell.get_str() + " ramifies in Q(sqrt " + m.get_str() + ")");
  return arith::kronecker(D, ell) == -1;
}

std::vector<Integer> inert_prime_stream(const Integer& m, const Integer& p, unsigned N, const Integer& bound) {
  const Integer D = fundamental_discriminant(m);
  const Integer mod = 2 * arith::pow(p, N);
  std::vector<Integer> out;
  if (bound < 2) return out;
  for (auto q : arith::primes_in_range(2, bound.get_ui())) {
    const Integer ell(static_cast<unsigned long>(q));
    if (arith::mod(ell - 1, mod) != 0) continue;
    if (mpz_divisible_p(D.get_mpz_t(), ell.get_mpz_t())) continue;
    if (arith::kronecker(D, ell) == -1) out.push_back(ell);
  }
  return out;
}

}  // namespace capitulab::quadf
