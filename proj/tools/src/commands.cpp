#include "capitulab/cli.hpp"

#include "capitulab/abgroup.hpp"
#include "capitulab/arith.hpp"
#include "capitulab/captrace.hpp"
#include "capitulab/chevalley.hpp"
#include "capitulab/cubf.hpp"
#include "capitulab/cyclo.hpp"
#include "capitulab/galchar.hpp"
#include "capitulab/quadf.hpp"
#include "capitulab/random_module.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace capitulab::cli {

namespace {

Json num(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json num_list(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

Json group_json(const abgroup::FinAbGroup& g) { return num_list(g.divisors()); }

std::string rat(const Rational& q) { return q.get_str(); }

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

template <class Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < w; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct VerdictJson {
  Json doc;
  bool error = false;
  bool mismatch = false;
};

VerdictJson verdict_json(const captrace::TowerRecord& r, std::span<const captrace::TowerRecord> siblings) {
  using namespace captrace;
  const CapitulationVerdict v = analyze(r);
  const auto findings = consistency_check(r, v, siblings);
  VerdictJson out;
  Json& d = out.doc;
  d["id"] = r.id();
  Json block;
  block["kind"] = to_string(r.kind);
  block[r.kind == FieldKind::Cubic ? "f" : "m"] = num(r.label);
  block["p"] = num(r.p);
  block["ell"] = num(r.ell);
  block["N"] = r.N;
  block["n"] = r.n;
  d["block"] = block;
  d["poly"] = r.poly;
  d["source"] = r.source + ":" + std::to_string(r.line);
  d["classification"] = to_string(v.classification);
  d["CK_p"] = group_json(v.CK_p);
  d["CKn_p"] = group_json(v.CKn_p);
  d["J_image"] = group_json(v.J_image.structure());
  d["ker_order"] = num(v.ker_order);
  d["implied_unit_norm_index"] = num(v.implied_unit_norm_index);
  d["main_conjecture"] = {{"unit_norm_index", num(v.main_conjecture.unit_norm_index)},
                          {"lower_bound", num(v.main_conjecture.lower_bound)},
                          {"equality", v.main_conjecture.equality}};
  Json fs = Json::array();
  for (const auto& f : findings) {
    Json j{{"code", f.code}, {"severity", to_string(f.severity)}, {"message", f.message}};
    j["predicted_layer"] = f.predicted_layer ? Json(*f.predicted_layer) : Json(nullptr);
    fs.push_back(j);
    if (f.severity == Severity::Error) out.error = true;
  }
  d["findings"] = fs;
  if (!r.note.empty()) {
    const Annotation a = parse_annotation(r.note);
    Json an{{"note", r.note}};
    an["classification"] = a.classification ? Json(to_string(*a.classification)) : Json(nullptr);
    const bool match = !a.classification || *a.classification == v.classification;
    an["match"] = match;
    if (!match) out.mismatch = true;
    d["annotation"] = an;
  } else {
    d["annotation"] = nullptr;
  }
  return out;
}

std::vector<captrace::TowerRecord> siblings_of(const captrace::TowerRecord& r,
                                               const std::vector<captrace::TowerRecord>& all) {
  std::vector<captrace::TowerRecord> s;
  for (const auto& x : all)
    if (x.tower_key() == r.tower_key()) s.push_back(x);
  return s;
}

}  // namespace

std::vector<Integer> parse_int_list(const std::string& s) {
  std::vector<Integer> out;
  std::string t;
  for (char c : s)
    if (c != '[' && c != ']' && c != ' ') t += c;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Integer x;
    if (x.set_str(item, 10) != 0) throw ParseError("not an integer: '" + item + "'");
    out.push_back(x);
  }
  return out;
}

unsigned worker_count() {
  const char* env = std::getenv("CAPITULAB_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long w = std::strtol(env, &end, 10);
  if (*end != '\0' || w < 1) throw DomainError("CAPITULAB_WORKERS must be a positive integer");
  return static_cast<unsigned>(std::min(w, 256L));
}

void SweepConfig::validate() const {
  if (!arith::is_prime(Integer(p)) || p == 3) throw DomainError("p must be a prime other than 3");
  if (N < 1) throw DomainError("N must be at least 1");
  if (Nn > N) throw DomainError("Nn must not exceed N");
  if (vHK > vHKn) throw DomainError("vHK must not exceed vHKn");
  if (bf < 7) throw DomainError("bf must be at least 7");
  if (bf > Bf) throw DomainError("bf must not exceed Bf");
  if (Bell < 1) throw DomainError("Bell must be positive");
  if (modulus < 0) throw DomainError("modulus must be non-negative");
}

Result cubic_sweep(const SweepConfig& cfg, const std::optional<std::string>& fixtures, unsigned workers) {
  cfg.validate();
  const Integer p(cfg.p);
  std::vector<captrace::TowerRecord> records;
  if (fixtures)
    for (auto& r : captrace::parse_transcript_file(*fixtures))
      if (r.kind == captrace::FieldKind::Cubic && r.p == p) records.push_back(std::move(r));

  const auto conductors = cubf::enumerate_conductors(Integer(cfg.bf), Integer(cfg.Bf));
  struct FieldOut {
    Json doc;
    std::size_t jobs = 0, verdicts = 0, stubs = 0;
    bool error = false;
  };
  auto per_f = parallel_map(conductors.size(), workers, [&](std::size_t i) {
    std::vector<FieldOut> fields;
    for (const auto& K : cubf::defining_polynomials(conductors[i])) {
      FieldOut fo;
      Json& d = fo.doc;
      d["f"] = num(K.f);
      d["PK"] = K.poly_str();
      d["a"] = num(K.a);
      d["b"] = num(K.b);
      std::vector<const captrace::TowerRecord*> mine;
      for (const auto& r : records)
        if (r.label == K.f && strip_spaces(r.poly) == strip_spaces(K.poly_str())) mine.push_back(&r);
      if (!mine.empty()) {
        const auto CK_p = abgroup::p_primary(mine.front()->CK, p).part;
        d["CK"] = group_json(mine.front()->CK);
        if (arith::valuation(CK_p.order(), p) < cfg.vHK) {
          d["skip"] = "below vHK";
          d["inert_primes"] = Json::array();
          d["jobs"] = Json::array();
          fields.push_back(std::move(fo));
          continue;
        }
      } else {
        d["CK"] = nullptr;
      }
      d["skip"] = nullptr;
      const auto primes = cubf::inert_primes(K, p, cfg.N, Integer(cfg.Bell), Integer(cfg.modulus));
      d["inert_primes"] = num_list(primes);
      Json jobs = Json::array();
      for (const auto& ell : primes) {
        for (unsigned n = 1; n <= cfg.Nn; ++n) {
          Json job{{"id", "f=" + K.f.get_str() + " ell=" + ell.get_str() + " n=" + std::to_string(n)},
                   {"ell", num(ell)},
                   {"n", n}};
          const captrace::TowerRecord* hit = nullptr;
          for (const auto* r : mine)
            if (r->ell == ell && r->n == n && r->N == cfg.N) hit = r;
          ++fo.jobs;
          if (hit) {
            auto sib = siblings_of(*hit, records);
            auto vj = verdict_json(*hit, sib);
            const auto CKn_p = abgroup::p_primary(hit->CKn, p).part;
            job["status"] = arith::valuation(CKn_p.order(), p) < cfg.vHKn ? "below vHKn" : "verdict";
            job["verdict"] = vj.doc;
            fo.error = fo.error || vj.error;
            ++fo.verdicts;
          } else {
            job["status"] = "external-data-needed";
            job["needs"] = {"CKn", "nu_rows"};
            job["compositum"] = "polcompositum(PK, polsubcyclo(" + ell.get_str() + ", " +
                                arith::pow(p, n).get_str() + "))";
            ++fo.stubs;
          }
          jobs.push_back(job);
        }
      }
      d["jobs"] = jobs;
      fields.push_back(std::move(fo));
    }
    return fields;
  });

  Result res;
  Json& doc = res.doc;
  doc["command"] = "cubic-sweep";
  doc["config"] = {{"p", cfg.p},   {"N", cfg.N},       {"Nn", cfg.Nn},     {"bf", cfg.bf},
                   {"Bf", cfg.Bf}, {"vHK", cfg.vHK},   {"vHKn", cfg.vHKn}, {"Bell", cfg.Bell},
                   {"modulus", cfg.modulus ? cfg.modulus : 2 * arith::pow(p, cfg.N).get_si()}};
  doc["fixtures"] = fixtures ? Json(*fixtures) : Json(nullptr);
  Json fields = Json::array();
  std::size_t nfields = 0, jobs = 0, verdicts = 0, stubs = 0;
  for (auto& list : per_f)
    for (auto& fo : list) {
      ++nfields;
      jobs += fo.jobs;
      verdicts += fo.verdicts;
      stubs += fo.stubs;
      if (fo.error) res.exit_code = 1;
      fields.push_back(std::move(fo.doc));
    }
  doc["summary"] = {{"conductors", conductors.size()},
                    {"fields", nfields},
                    {"jobs", jobs},
                    {"verdicts", verdicts},
                    {"external_data_needed", stubs}};
  doc["fields"] = std::move(fields);
  return res;
}

Result quad(const QuadConfig& cfg, const std::optional<std::string>& fixtures) {
  const Integer m(cfg.m), p(cfg.p);
  if (!arith::is_prime(p) || p == 2) throw DomainError("p must be an odd prime");
  if (cfg.N < 1) throw DomainError("N must be at least 1");
  const auto cg = quadf::class_group(m);
  const auto pcg = abgroup::p_primary(cg.wide, p).part;
  const auto fu = quadf::fundamental_unit(m);
  Result res;
  Json& d = res.doc;
  d["command"] = "quad";
  d["m"] = num(m);
  d["D"] = num(cg.D);
  d["p"] = cfg.p;
  d["class_group"] = {{"wide", group_json(cg.wide)}, {"narrow", group_json(cg.narrow)}};
  d["p_class_group"] = group_json(pcg);
  d["fundamental_unit"] = {{"x", fu.x.get_str()}, {"y", fu.y.get_str()}, {"norm", fu.norm}};
  d["skip"] = arith::valuation(pcg.order(), p) < cfg.vHK ? Json("below vHK") : Json(nullptr);
  d["N"] = cfg.N;
  d["Bell"] = cfg.Bell;
  d["inert_primes"] = num_list(quadf::inert_prime_stream(m, p, cfg.N, Integer(cfg.Bell)));
  Json verdicts = Json::array();
  if (fixtures) {
    std::vector<captrace::TowerRecord> mine;
    for (auto& r : captrace::parse_transcript_file(*fixtures))
      if (r.kind == captrace::FieldKind::Quadratic && r.label == m && r.p == p) mine.push_back(std::move(r));
    for (const auto& r : mine) {
      auto sib = siblings_of(r, mine);
      auto vj = verdict_json(r, sib);
      if (vj.error) res.exit_code = 1;
      verdicts.push_back(vj.doc);
    }
  }
  d["verdicts"] = verdicts;
  return res;
}

Result analyze(const std::string& fixture_path) {
  const auto records = captrace::parse_transcript_file(fixture_path);
  Result res;
  res.doc = Json::array();
  for (const auto& r : records) {
    auto sib = siblings_of(r, records);
    auto vj = verdict_json(r, sib);
    if (vj.error || vj.mismatch) res.exit_code = 1;
    res.doc.push_back(vj.doc);
  }
  return res;
}

namespace {

struct SuiteOutcome {
  std::size_t cases = 0;
  std::vector<std::string> failures;
};

SuiteOutcome suite_cyclo_norms(std::uint64_t seed, unsigned count, unsigned workers) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<unsigned long, unsigned long>> pairs{{25, 5}, {21, 3}};
  std::uniform_int_distribution<unsigned long> F(2, 200);
  while (pairs.size() < count) {
    const unsigned long f = F(rng);
    std::vector<unsigned long> ms;
    for (unsigned long m = 2; m <= f; ++m)
      if (f % m == 0) ms.push_back(m);
    pairs.emplace_back(f, ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)]);
  }
  pairs.resize(count);
  auto ok = parallel_map(pairs.size(), workers,
                         [&](std::size_t i) { return cyclo::verify_norm_relation(pairs[i].first, pairs[i].second).holds; });
  SuiteOutcome out;
  out.cases = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!ok[i])
      out.failures.push_back("(f, m) = (" + std::to_string(pairs[i].first) + ", " + std::to_string(pairs[i].second) + ")");
  return out;
}

SuiteOutcome suite_analytic_index(unsigned workers) {
  std::vector<Integer> fs;
  for (std::uint64_t q : arith::primes_in_range(5, 499))
    if (q % 4 == 1) fs.push_back(Integer(static_cast<unsigned long>(q)));
  auto rows = parallel_map(fs.size(), workers, [&](std::size_t i) {
    const auto ci = cyclo::cyclotomic_unit_exponent(fs[i]);
    const Integer h = quadf::class_group(fs[i]).wide.order();
    return std::make_pair(Integer(ci.exponent), h);
  });
  SuiteOutcome out;
  out.cases = fs.size();
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (rows[i].first != rows[i].second)
      out.failures.push_back("f=" + fs[i].get_str() + ": exponent " + rows[i].first.get_str() + ", class number " +
                             rows[i].second.get_str());
  return out;
}

SuiteOutcome suite_chevalley(std::uint64_t seed, unsigned count) {
  std::mt19937_64 rng(seed);
  const std::vector<long> primes{2, 3, 5, 7};
  SuiteOutcome out;
  for (unsigned k = 0; k < count; ++k) {
    const Integer p(primes[rng() % primes.size()]);
    std::vector<Integer> orders;
    const unsigned r = 1 + rng() % 3;
    for (unsigned i = 0; i < r; ++i) orders.push_back(arith::pow(p, rng() % 4));
    const auto HK = abgroup::FinAbGroup::from_cyclic_orders(orders);
    const unsigned n = 1 + rng() % 3;
    ++out.cases;
    const Integer amb = chevalley::ambiguous_number({HK.order(), n, p, {arith::pow(p, n)}, 1});
    if (amb != HK.order())
      out.failures.push_back("ambiguous number " + amb.get_str() + " for hK " + HK.order().get_str());
    const auto L = chevalley::simulate_filtration(HK, n, seed * 1000003ULL + k);
    for (const auto& v : L.violations())
      out.failures.push_back("simulation " + std::to_string(k) + " (" + HK.str() + "): " + v);
    Integer prod = 1;
    for (const auto& s : L.steps) prod *= s;
    if (prod != L.hL() || L.hL() < HK.order())
      out.failures.push_back("simulation " + std::to_string(k) + ": product of steps is not #H_L");
  }
  return out;
}

SuiteOutcome suite_characters(std::uint64_t seed, unsigned count, unsigned workers) {
  auto failures = parallel_map(count, workers, [&](std::size_t i) -> std::optional<std::string> {
    std::mt19937_64 rng(seed * 7919ULL + i);
    const auto rm = random_galois_module(rng, 4096, 12);
    const auto dec = galchar::decompose(rm.module, rm.p);
    if (auto why = check_decomposition(rm.module, dec)) return "module " + std::to_string(i) + ": " + *why;
    return std::nullopt;
  });
  SuiteOutcome out;
  out.cases = count;
  for (auto& f : failures)
    if (f) out.failures.push_back(*f);
  return out;
}

}  // namespace

Result verify(const VerifyConfig& cfg, unsigned workers) {
  SuiteOutcome o;
  if (cfg.suite == "cyclo-norms")
    o = suite_cyclo_norms(cfg.seed, cfg.count.value_or(200), workers);
  else if (cfg.suite == "analytic-index")
    o = suite_analytic_index(workers);
  else if (cfg.suite == "chevalley")
    o = suite_chevalley(cfg.seed, cfg.count.value_or(10000));
  else if (cfg.suite == "characters")
    o = suite_characters(cfg.seed, cfg.count.value_or(500), workers);
  else
    throw DomainError("unknown suite '" + cfg.suite + "'");
  Result res;
  res.doc["command"] = "verify";
  res.doc["suite"] = cfg.suite;
  res.doc["seed"] = cfg.seed;
  res.doc["cases"] = o.cases;
  res.doc["passed"] = o.cases - std::min(o.cases, o.failures.size());
  res.doc["failures"] = o.failures;
  res.exit_code = o.failures.empty() ? 0 : 1;
  return res;
}

Result simulate(const std::vector<Integer>& HK, unsigned n, std::uint64_t seed, unsigned count) {
  const auto G = abgroup::FinAbGroup::from_cyclic_orders(HK);
  Result res;
  res.doc["command"] = "simulate";
  res.doc["HK"] = group_json(G);
  res.doc["n"] = n;
  Json runs = Json::array();
  for (unsigned k = 0; k < count; ++k) {
    const auto L = chevalley::simulate_filtration(G, n, seed + k);
    const auto v = L.violations();
    if (!v.empty()) res.exit_code = 1;
    runs.push_back({{"seed", seed + k},
                    {"norm_image_orders", num_list(L.norm_image_orders)},
                    {"steps", num_list(L.steps)},
                    {"hL", num(L.hL())},
                    {"violations", v}});
  }
  res.doc["runs"] = runs;
  return res;
}

Result cyclo_norm(unsigned long f, unsigned long m) {
  const auto c = cyclo::verify_norm_relation(f, m);
  Result res;
  res.doc["command"] = "cyclo norm";
  res.doc["f"] = f;
  res.doc["m"] = m;
  res.doc["omega"] = c.omega.str();
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < c.norm.dimension(); ++i) coeffs.push_back(rat(c.norm.coeff(i)));
  res.doc["norm_coefficients"] = coeffs;
  res.doc["holds"] = c.holds;
  res.exit_code = c.holds ? 0 : 1;
  return res;
}

Result cyclo_theta(const Integer& f) {
  const auto th = cyclo::theta_chi(f);
  Result res;
  res.doc["command"] = "cyclo theta";
  res.doc["f"] = num(f);
  res.doc["half_system"] = th.half_system;
  res.doc["theta_square"] = {{"D", num(th.value.D)}, {"r", rat(th.value.r)}, {"s", rat(th.value.s)}};
  res.doc["norm"] = rat(th.value.norm());
  return res;
}

Result cyclo_index(const Integer& f) {
  const auto ci = cyclo::cyclotomic_unit_exponent(f);
  const auto cg = quadf::class_group(f);
  Result res;
  res.doc["command"] = "cyclo index";
  res.doc["f"] = num(f);
  res.doc["exponent"] = ci.exponent;
  res.doc["sign"] = ci.sign;
  res.doc["orientation"] = ci.orientation;
  res.doc["unit"] = {{"r", rat(ci.unit.r)}, {"s", rat(ci.unit.s)}};
  res.doc["precision_digits"] = ci.precision_digits;
  res.doc["class_number"] = num(cg.wide.order());
  const bool match = Integer(ci.exponent) == cg.wide.order();
  res.doc["match"] = match;
  res.exit_code = match ? 0 : 1;
  return res;
}

Result characters_enumerate(unsigned long d, const Integer& p) {
  Result res;
  res.doc["command"] = "characters enumerate";
  res.doc["d"] = d;
  res.doc["p"] = num(p);
  Json list = Json::array();
  for (const auto& c : galchar::enumerate_phi(d, p))
    list.push_back({{"label", c.label()}, {"e", c.e}, {"orbit", c.orbit}, {"degree", c.degree}});
  res.doc["characters"] = list;
  return res;
}

Result characters_decompose(const std::vector<Integer>& group, const std::string& sigma, unsigned long d,
                            const Integer& p) {
  const abgroup::FinAbGroup G(group);
  std::vector<std::vector<Integer>> rows;
  std::stringstream ss(sigma);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_int_list(row));
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != G.rank())
      throw ParseError("sigma row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(G.rank()));
  if (rows.size() != G.rank())
    throw ParseError("sigma has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(G.rank()));
  const galchar::GaloisModule M(G, IntMatrix(G.rank(), G.rank(), rows), d);
  const auto dec = galchar::decompose(M, p);
  Result res;
  res.doc["command"] = "characters decompose";
  res.doc["group"] = group_json(G);
  res.doc["d"] = d;
  res.doc["p"] = num(p);
  res.doc["precision"] = dec.precision;
  Json comps = Json::array();
  for (const auto& c : dec.components) {
    Json gens = Json::array();
    for (const auto& g : c.subgroup.generators()) gens.push_back(num_list(g.coords()));
    comps.push_back({{"phi", c.phi.label()},
                     {"idempotent", poly::format(c.idempotent)},
                     {"structure", group_json(c.subgroup.structure())},
                     {"generators", gens}});
  }
  res.doc["components"] = comps;
  return res;
}

Result characters_resolve(unsigned long d, const std::vector<std::string>& values, bool integral) {
  std::map<unsigned long, Rational> in;
  for (const auto& v : values) {
    const auto colon = v.find(':');
    if (colon == std::string::npos) throw ParseError("expected t:value, got '" + v + "'");
    Rational q;
    if (q.set_str(v.substr(colon + 1), 10) != 0) throw ParseError("not a rational: '" + v.substr(colon + 1) + "'");
    q.canonicalize();
    in[std::stoul(v.substr(0, colon))] = q;
  }
  const auto out = galchar::chi_resolve(d, in, integral);
  Result res;
  res.doc["command"] = "characters resolve";
  res.doc["d"] = d;
  Json vals = Json::object();
  for (const auto& [t, q] : out) vals[std::to_string(t)] = rat(q);
  res.doc["per_character"] = vals;
  return res;
}

}  // namespace capitulab::cli
