#pragma once

#include "capitulab/abgroup.hpp"
#include "capitulab/chevalley.hpp"
#include "capitulab/common.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace capitulab::captrace {

enum class FieldKind { Cubic, Quadratic };
enum class Classification { Complete, Incomplete, None };
enum class Severity { Info, Warning, Error };

std::string to_string(FieldKind k);
std::string to_string(Classification c);
std::string to_string(Severity s);

// One layer K_n of a tower K_N = K L_N with transfer images nu(h_i) in the CKn basis.
struct TowerRecord {
  FieldKind kind = FieldKind::Cubic;
  Integer label;  // conductor f (cubic) or radicand m (quadratic)
  std::string poly;
  Integer p;
  Integer ell;
  unsigned N = 1;
  unsigned n = 1;
  abgroup::FinAbGroup CK;
  abgroup::FinAbGroup CKn;
  std::vector<std::vector<Integer>> nu_rows;
  std::string note;  // free-text annotation carried by the transcript
  std::string source;
  std::size_t line = 0;

  std::string id() const;  // "cubic f=2817 p=2 ell=449 N=2 n=2"
  std::string tower_key() const;
};

// Throws DomainError on a violated record invariant.
void validate(const TowerRecord& rec);

struct CapitulationVerdict {
  Classification classification = Classification::None;
  abgroup::FinAbGroup CK_p;
  abgroup::FinAbGroup CKn_p;
  abgroup::Subgroup J_image;
  Integer ker_order;
  Integer implied_unit_norm_index;
  chevalley::MainConjectureLedger main_conjecture;
};

CapitulationVerdict analyze(const TowerRecord& rec);

struct Finding {
  std::string code;
  Severity severity = Severity::Info;
  std::string message;
  std::optional<unsigned> predicted_layer;
};

// siblings: records of the same tower (same kind, label, p, ell, N); the record itself
// may be among them.
std::vector<Finding> consistency_check(const TowerRecord& rec, const CapitulationVerdict& verdict,
                                       std::span<const TowerRecord> siblings = {});

std::vector<TowerRecord> parse_transcripts(std::istream& in, const std::string& source = "<input>");
std::vector<TowerRecord> parse_transcript_file(const std::filesystem::path& path);

// Claims extracted from a transcript note.
struct Annotation {
  std::optional<Classification> classification;
  std::optional<unsigned> stability_from;
  std::optional<unsigned> predicted_layer;
  bool n_too_small = false;
};

Annotation parse_annotation(const std::string& note);

struct ReportGroup {
  std::size_t records = 0;
  std::map<std::string, std::size_t> by_classification;
  std::map<std::string, std::size_t> CKn_p_histogram;
};

struct BatchReport {
  std::size_t records = 0;
  std::map<std::string, std::size_t> by_classification;
  std::map<std::string, ReportGroup> groups;  // key: kind, p, CK_p, n
};

BatchReport batch_report(std::span<const TowerRecord> records);

}  // namespace capitulab::captrace
