#include "capitulab/captrace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>

#include "capitulab/arith.hpp"

namespace capitulab::captrace {

std::string to_string(FieldKind k) { return k == FieldKind::Cubic ? "cubic" : "quadratic"; }

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Complete: return "Complete";
    case Classification::Incomplete: return "Incomplete";
    case Classification::None: return "None";
  }
  return "?";
}

std::string to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

std::string TowerRecord::id() const {
  return to_string(kind) + (kind == FieldKind::Cubic ? " f=" : " m=") + label.get_str() +
         " p=" + p.get_str() + " ell=" + ell.get_str() + " N=" + std::to_string(N) +
         " n=" + std::to_string(n);
}

std::string TowerRecord::tower_key() const {
  return to_string(kind) + "|" + label.get_str() + "|" + p.get_str() + "|" + ell.get_str() + "|" +
         std::to_string(N);
}

void validate(const TowerRecord& rec) {
  const std::string who = "record " + rec.id() + ": ";
  if (!arith::is_prime(rec.p)) throw DomainError(who + "p is not prime");
  if (!arith::is_prime(rec.ell)) throw DomainError(who + "ell is not prime");
  if (rec.n < 1 || rec.n > rec.N) throw DomainError(who + "layer n must satisfy 1 <= n <= N");
  // K_n needs ell = 1 mod 2p^n; the mod 2p^N congruence is reported by consistency_check.
  const Integer m = 2 * arith::pow(rec.p, rec.n);
  if (arith::mod(rec.ell - 1, m) != 0)
    throw DomainError(who + "ell is not 1 mod " + m.get_str());
  if (rec.nu_rows.size() != rec.CKn.rank())
    throw DomainError(who + "expected " + std::to_string(rec.CKn.rank()) + " nu rows, got " +
                      std::to_string(rec.nu_rows.size()));
  for (std::size_t i = 0; i < rec.nu_rows.size(); ++i) {
    const auto& row = rec.nu_rows[i];
    if (row.size() != rec.CKn.rank())
      throw DomainError(who + "nu row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(rec.CKn.rank()));
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] < 0 || row[j] >= rec.CKn.divisors()[j])
        throw DomainError(who + "nu row " + std::to_string(i) + " entry " + std::to_string(j) +
                          " is not reduced modulo " + rec.CKn.divisors()[j].get_str());
  }
}

CapitulationVerdict analyze(const TowerRecord& rec) {
  validate(rec);
  CapitulationVerdict v;
  const auto ck = abgroup::p_primary(rec.CK, rec.p);
  const auto ckn = abgroup::p_primary(rec.CKn, rec.p);
  v.CK_p = ck.part;
  v.CKn_p = ckn.part;
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : rec.nu_rows) rows.push_back(ckn.project_row(r));
  v.J_image = abgroup::subgroup_from_rows(ckn.part, rows);
  const Integer hK = ck.part.order();
  const Integer J = v.J_image.order();
  if (!mpz_divisible_p(hK.get_mpz_t(), J.get_mpz_t()))
    throw DomainError("record " + rec.id() + ": image order " + J.get_str() +
                      " does not divide the p-class number " + hK.get_str());
  v.ker_order = hK / J;
  v.implied_unit_norm_index = v.ker_order;
  if (J == 1)
    v.classification = Classification::Complete;
  else if (v.ker_order == 1)
    v.classification = Classification::None;
  else
    v.classification = Classification::Incomplete;
  v.main_conjecture = chevalley::main_conjecture_ledger(hK, J, v.classification == Classification::Complete);
  return v;
}

namespace {

bool divisors_pair_up(const abgroup::FinAbGroup& g) {
  const auto& d = g.divisors();
  if (d.size() % 2) return false;
  for (std::size_t i = 0; i < d.size(); i += 2)
    if (d[i] != d[i + 1]) return false;
  return true;
}

unsigned exponent_valuation(const abgroup::FinAbGroup& g, const Integer& p) {
  return g.is_trivial() ? 0 : arith::valuation(abgroup::exponent(g), p);
}

}  // namespace

std::vector<Finding> consistency_check(const TowerRecord& rec, const CapitulationVerdict& verdict,
                                       std::span<const TowerRecord> siblings) {
  std::vector<Finding> out;
  const Integer hK = verdict.CK_p.order();
  const unsigned eK = exponent_valuation(verdict.CK_p, rec.p);

  if (verdict.classification == Classification::Complete && rec.n < eK)
    out.push_back({"complete-before-exponent", Severity::Error,
                   "complete capitulation in K" + std::to_string(rec.n) + " but H_K has exponent p^" +
                       std::to_string(eK),
                   std::nullopt});

  if (!mpz_divisible_p(verdict.CKn_p.order().get_mpz_t(), hK.get_mpz_t()))
    out.push_back({"order-divisibility", Severity::Error,
                   "#p(CKn) = " + verdict.CKn_p.order().get_str() + " is not a multiple of #p(CK) = " +
                       hK.get_str(),
                   std::nullopt});

  if (rec.kind == FieldKind::Cubic && rec.p != 3 && arith::mult_order(rec.p, 3) == 2) {
    for (const auto* g : {&verdict.CK_p, &verdict.CKn_p})
      if (!divisors_pair_up(*g))
        out.push_back({"pairing", Severity::Error,
                       "p-part " + g->str() + " of a cubic field with p = 2 mod 3 must have paired invariants",
                       std::nullopt});
  }

  const Integer m = 2 * arith::pow(rec.p, rec.N);
  if (arith::mod(rec.ell - 1, m) != 0)
    out.push_back({"ell-congruence", Severity::Warning,
                   "ell = " + rec.ell.get_str() + " is not 1 mod 2p^N = " + m.get_str(), std::nullopt});

  for (const auto& d : rec.CKn.divisors()) {
    if (mpz_divisible_p(d.get_mpz_t(), rec.p.get_mpz_t()) && arith::pow(rec.p, arith::valuation(d, rec.p)) != d) {
      out.push_back({"mixed-divisor", Severity::Info,
                     "CKn divisor " + d.get_str() + " mixes p and prime-to-p parts; rows projected by idempotent",
                     std::nullopt});
      break;
    }
  }

  if (hK == 1)
    out.push_back({"trivial-p-part", Severity::Info, "p-part of CK is trivial", std::nullopt});

  // Stability: p-class numbers h_0 = #p(CK), h_j from the sibling layers.
  std::map<unsigned, Integer> h{{0u, hK}};
  std::map<unsigned, Classification> cls;
  for (const auto& s : siblings) {
    if (s.tower_key() != rec.tower_key()) continue;
    h[s.n] = abgroup::p_primary(s.CKn, s.p).part.order();
    cls[s.n] = analyze(s).classification;
  }
  h[rec.n] = verdict.CKn_p.order();
  cls[rec.n] = verdict.classification;
  std::optional<unsigned> n0;
  for (const auto& [j, hj] : h) {
    auto next = h.find(j + 1);
    if (next != h.end() && next->second == hj) {
      n0 = j;
      break;
    }
  }
  if (n0) {
    auto sv = chevalley::stability_from_layer(*n0, h[*n0], h[*n0 + 1], eK, rec.N);
    if (sv.capitulation_layer) {
      out.push_back({"stability", Severity::Info,
                     "stability from K" + std::to_string(*n0) + ": capitulation of H_K in K" +
                         std::to_string(*sv.capitulation_layer),
                     sv.capitulation_layer});
      for (const auto& [j, c] : cls)
        if (j >= *sv.capitulation_layer && c != Classification::Complete)
          out.push_back({"stability-contradiction", Severity::Error,
                         "layer " + std::to_string(j) + " is not Complete despite predicted capitulation",
                         sv.capitulation_layer});
      for (const auto& [j, hj] : h)
        if (j > *n0 && hj != h[*n0])
          out.push_back({"stability-contradiction", Severity::Error,
                         "p-class number changes at layer " + std::to_string(j) + " after stabilising",
                         std::nullopt});
    } else {
      out.push_back({"stability-n-too-small", Severity::Info,
                     "stability from K" + std::to_string(*n0) + " but N = " + std::to_string(rec.N) +
                         " < " + std::to_string(*n0 + eK),
                     std::nullopt});
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<Integer> parse_int_list(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw ParseError("expected a bracketed list, got '" + t + "'", line);
  std::vector<Integer> out;
  std::string body = t.substr(1, t.size() - 2);
  if (trim(body).empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    Integer v;
    if (item.empty() || v.set_str(item, 10) != 0) throw ParseError("bad integer '" + item + "'", line);
    out.push_back(v);
  }
  return out;
}

Integer parse_int(const std::string& s, const std::string& key, std::size_t line) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("bad integer for " + key + ": '" + s + "'", line);
  return v;
}

unsigned parse_uint(const std::string& s, const std::string& key, std::size_t line) {
  Integer v = parse_int(s, key, line);
  if (v < 0 || !v.fits_uint_p()) throw ParseError("bad value for " + key + ": '" + s + "'", line);
  return static_cast<unsigned>(v.get_ui());
}

// key=value tokens, values may be double-quoted.
std::map<std::string, std::string> parse_header(const std::string& s, std::size_t line) {
  std::map<std::string, std::string> kv;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t eq = s.find('=', i);
    if (eq == std::string::npos) throw ParseError("expected key=value in record header", line);
    std::string key = trim(s.substr(i, eq - i));
    i = eq + 1;
    std::string val;
    if (i < s.size() && s[i] == '"') {
      std::size_t close = s.find('"', i + 1);
      if (close == std::string::npos) throw ParseError("unterminated quote in record header", line);
      val = s.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      std::size_t end = i;
      while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
      val = s.substr(i, end - i);
      i = end;
    }
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line);
    kv[key] = val;
  }
  return kv;
}

}  // namespace

std::vector<TowerRecord> parse_transcripts(std::istream& in, const std::string& source) {
  std::vector<TowerRecord> out;
  std::string raw;
  std::size_t line = 0;
  std::optional<TowerRecord> cur;
  bool have_ck = false, have_ckn = false;
  auto where = [&](const TowerRecord& r) { return "record " + r.id() + " (from line " + std::to_string(r.line) + "): "; };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (!cur) {
      if (s.rfind("record", 0) != 0 || (s.size() > 6 && !std::isspace(static_cast<unsigned char>(s[6]))))
        throw ParseError("expected 'record', got '" + s + "'", line);
      auto kv = parse_header(s.substr(6), line);
      TowerRecord r;
      r.source = source;
      r.line = line;
      auto take = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw ParseError("record header is missing '" + k + "'", line);
        std::string v = it->second;
        kv.erase(it);
        return v;
      };
      std::string kind = take("kind");
      if (kind == "cubic") {
        r.kind = FieldKind::Cubic;
        r.label = parse_int(take("f"), "f", line);
      } else if (kind == "quadratic") {
        r.kind = FieldKind::Quadratic;
        r.label = parse_int(take("m"), "m", line);
      } else {
        throw ParseError("unknown kind '" + kind + "'", line);
      }
      r.poly = take("poly");
      r.p = parse_int(take("p"), "p", line);
      r.ell = parse_int(take("ell"), "ell", line);
      r.N = parse_uint(take("N"), "N", line);
      r.n = parse_uint(take("n"), "n", line);
      if (!kv.empty()) throw ParseError("unknown key '" + kv.begin()->first + "'", line);
      cur = std::move(r);
      have_ck = have_ckn = false;
      continue;
    }
    if (s == "end") {
      if (!have_ck || !have_ckn) throw ParseError(where(*cur) + "missing CK or CKn", line);
      try {
        validate(*cur);
      } catch (const DomainError& e) {
        throw ParseError(std::string(e.what()) + " (from line " + std::to_string(cur->line) + ")", line);
      }
      out.push_back(std::move(*cur));
      cur.reset();
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(where(*cur) + "expected 'key = value', got '" + s + "'", line);
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    try {
      if (key == "CK") {
        cur->CK = abgroup::FinAbGroup(parse_int_list(val, line));
        have_ck = true;
      } else if (key == "CKn") {
        cur->CKn = abgroup::FinAbGroup(parse_int_list(val, line));
        have_ckn = true;
      } else if (key == "nu") {
        if (!have_ckn) throw ParseError(where(*cur) + "nu row before CKn", line);
        auto row = parse_int_list(val, line);
        if (row.size() != cur->CKn.rank())
          throw ParseError(where(*cur) + "nu row " + std::to_string(cur->nu_rows.size()) + " has " +
                               std::to_string(row.size()) + " entries, expected " +
                               std::to_string(cur->CKn.rank()),
                           line);
        cur->nu_rows.push_back(std::move(row));
      } else if (key == "note") {
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        cur->note = val;
      } else {
        throw ParseError(where(*cur) + "unknown field '" + key + "'", line);
      }
    } catch (const DomainError& e) {
      throw ParseError(where(*cur) + e.what(), line);
    }
  }
  if (cur) throw ParseError("record " + cur->id() + " (from line " + std::to_string(cur->line) + ") is not closed by 'end'", line);
  return out;
}

std::vector<TowerRecord> parse_transcript_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open transcript file " + path.string());
  return parse_transcripts(f, path.string());
}

Annotation parse_annotation(const std::string& note) {
  Annotation a;
  std::string s = note;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s.find("no capitulation") != std::string::npos)
    a.classification = Classification::None;
  else if (s.find("incomplete capitulation") != std::string::npos)
    a.classification = Classification::Incomplete;
  else if (s.find("complete capitulation") != std::string::npos)
    a.classification = Classification::Complete;

  static const std::regex stab(R"(stability from k_?(\d*))");
  static const std::regex layer(R"(capitulation in k_?\{?(\d+))");
  std::smatch m;
  if (std::regex_search(s, m, stab)) {
    a.stability_from = m[1].str().empty() ? 0u : static_cast<unsigned>(std::stoul(m[1].str()));
    std::string rest = m.suffix().str();
    std::smatch m2;
    if (std::regex_search(rest, m2, layer)) a.predicted_layer = static_cast<unsigned>(std::stoul(m2[1].str()));
    a.n_too_small = rest.find("too small") != std::string::npos;
  }
  return a;
}

BatchReport batch_report(std::span<const TowerRecord> records) {
  BatchReport rep;
  for (const auto& r : records) {
    const auto v = analyze(r);
    const std::string c = to_string(v.classification);
    ++rep.records;
    ++rep.by_classification[c];
    const std::string key = to_string(r.kind) + " p=" + r.p.get_str() + " CK_p=" + v.CK_p.str() +
                            " n=" + std::to_string(r.n);
    auto& g = rep.groups[key];
    ++g.records;
    ++g.by_classification[c];
    ++g.CKn_p_histogram[v.CKn_p.str()];
  }
  return rep;
}

}  // namespace capitulab::captrace
