#include "capitulab/modpoly.hpp"

#include "capitulab/arith.hpp"

namespace capitulab::poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const Poly& a) {
  for (long i = static_cast<long>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly monomial(const Integer& c, std::size_t k) {
  if (c == 0) return {};
  Poly a(k + 1);
  a[k] = c;
  return a;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, const Integer& k) {
  Poly r = a;
  for (auto& x : r) x *= k;
  trim(r);
  return r;
}

Integer eval(const Poly& a, const Integer& x) {
  Integer r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
  return r;
}

Poly derivative(const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

Poly taylor_shift(const Poly& a, const Integer& t) {
  // Horner in the shifted variable.
  Poly r;
  const Poly lin{t, 1};
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = add(mul(r, lin), Poly{*it});
  return r;
}

Poly reduce(const Poly& a, const Integer& n) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = arith::mod(a[i], n);
  trim(r);
  return r;
}

Poly add_mod(const Poly& a, const Poly& b, const Integer& n) { return reduce(add(a, b), n); }
Poly sub_mod(const Poly& a, const Poly& b, const Integer& n) { return reduce(sub(a, b), n); }
Poly mul_mod(const Poly& a, const Poly& b, const Integer& n) { return reduce(mul(a, b), n); }

std::pair<Poly, Poly> divrem_monic(const Poly& a, const Poly& b, const Integer& n) {
  long db = degree(b);
  if (db < 0 || b[db] != 1) throw DomainError("divrem_monic: divisor is not monic");
  Poly r = reduce(a, n);
  long dr = degree(r);
  if (dr < db) return {{}, r};
  Poly q(dr - db + 1);
  for (long k = dr; k >= db; --k) {
    Integer c = arith::mod(r[k], n);
    if (c == 0) continue;
    q[k - db] = c;
    for (long j = 0; j <= db; ++j) r[k - db + j] = arith::mod(r[k - db + j] - c * b[j], n);
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly rem_monic(const Poly& a, const Poly& b, const Integer& n) { return divrem_monic(a, b, n).second; }

Poly make_monic(const Poly& a, const Integer& p) {
  long d = degree(a);
  if (d < 0) return {};
  Integer inv = arith::inverse_mod(a[d], p);
  return reduce(scale(a, inv), p);
}

std::pair<Poly, Poly> divrem_field(const Poly& a, const Poly& b, const Integer& p) {
  long db = degree(b);
  if (db < 0) throw DomainError("divrem_field: division by zero polynomial");
  Integer lc = arith::mod(b[db], p);
  Integer inv = arith::inverse_mod(lc, p);
  Poly bm = reduce(scale(b, inv), p);
  auto [q, r] = divrem_monic(a, bm, p);
  return {reduce(scale(q, inv), p), r};
}

std::tuple<Poly, Poly, Poly> xgcd_field(const Poly& a, const Poly& b, const Integer& p) {
  Poly r0 = reduce(a, p), r1 = reduce(b, p);
  Poly s0{1}, s1{}, t0{}, t1{1};
  while (degree(r1) >= 0) {
    auto [q, r] = divrem_field(r0, r1, p);
    Poly s2 = sub_mod(s0, mul(q, s1), p);
    Poly t2 = sub_mod(t0, mul(q, t1), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  long d = degree(r0);
  if (d < 0) return {{}, s0, t0};
  Integer inv = arith::inverse_mod(r0[d], p);
  return {reduce(scale(r0, inv), p), reduce(scale(s0, inv), p), reduce(scale(t0, inv), p)};
}

Poly powmod(const Poly& base, const Integer& e, const Poly& m, const Integer& n) {
  if (e < 0) throw DomainError("powmod: negative exponent");
  Poly result = rem_monic(Poly{1}, m, n);
  Poly b = rem_monic(base, m, n);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem_monic(mul(result, result), m, n);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem_monic(mul(result, b), m, n);
  }
  return result;
}

std::string format(const Poly& a, const std::string& var) {
  long d = degree(a);
  if (d < 0) return "0";
  std::string s;
  for (long k = d; k >= 0; --k) {
    const Integer& c = a[k];
    if (c == 0) continue;
    Integer m = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0)
      s += m.get_str();
    else if (m == 1)
      s += mono;
    else
      s += m.get_str() + "*" + mono;
  }
  return s;
}

}  // namespace capitulab::poly
