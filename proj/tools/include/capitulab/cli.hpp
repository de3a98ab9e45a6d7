#pragma once

#include "capitulab/common.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace capitulab::cli {

using Json = nlohmann::ordered_json;

struct Result {
  Json doc;
  int exit_code = 0;  // 0 ok, 1 verification failure
};

// Flag names follow the PARI program variables.
struct SweepConfig {
  long p = 2;
  unsigned N = 2;
  unsigned Nn = 2;
  long bf = 7;
  long Bf = 5000;
  unsigned vHK = 4;
  unsigned vHKn = 6;
  long Bell = 500;
  long modulus = 0;  // 0 means 2 p^N
  void validate() const;
};

// Worker count from CAPITULAB_WORKERS, at least 1.
unsigned worker_count();

Result cubic_sweep(const SweepConfig& cfg, const std::optional<std::string>& fixtures, unsigned workers);

struct QuadConfig {
  long m = 0;
  long p = 3;
  unsigned N = 2;
  unsigned vHK = 2;
  long Bell = 500;
};
Result quad(const QuadConfig& cfg, const std::optional<std::string>& fixtures);

Result analyze(const std::string& fixture_path);

struct VerifyConfig {
  std::string suite;
  std::uint64_t seed = 1;
  std::optional<unsigned> count;  // suite default when empty
};
Result verify(const VerifyConfig& cfg, unsigned workers);

Result simulate(const std::vector<Integer>& HK, unsigned n, std::uint64_t seed, unsigned count);

Result cyclo_norm(unsigned long f, unsigned long m);
Result cyclo_theta(const Integer& f);
Result cyclo_index(const Integer& f);

Result characters_enumerate(unsigned long d, const Integer& p);
// sigma rows separated by ';', entries by ','.
Result characters_decompose(const std::vector<Integer>& group, const std::string& sigma, unsigned long d,
                            const Integer& p);
// "t:value" pairs, one per divisor t of d.
Result characters_resolve(unsigned long d, const std::vector<std::string>& values, bool integral);

std::vector<Integer> parse_int_list(const std::string& s);

}  // namespace capitulab::cli
