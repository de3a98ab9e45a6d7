#include "capitulab/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace capitulab;

int main(int argc, char** argv) {
  CLI::App app{"capitulab: capitulation experiments in cyclic towers over cubic and quadratic fields"};
  app.require_subcommand(1);

  cli::SweepConfig sweep;
  std::optional<std::string> sweep_fixtures;
  auto* cs = app.add_subcommand("cubic-sweep", "Enumerate cubic fields, inert primes and transfer jobs");
  cs->add_option("--p", sweep.p, "prime p != 3")->capture_default_str();
  cs->add_option("--N", sweep.N, "degree p^N of the auxiliary tower")->capture_default_str();
  cs->add_option("--Nn", sweep.Nn, "last layer examined")->capture_default_str();
  cs->add_option("--bf", sweep.bf, "smallest conductor")->capture_default_str();
  cs->add_option("--Bf", sweep.Bf, "largest conductor")->capture_default_str();
  cs->add_option("--vHK", sweep.vHK, "minimal p-valuation of #H_K")->capture_default_str();
  cs->add_option("--vHKn", sweep.vHKn, "minimal p-valuation of #H_Kn")->capture_default_str();
  cs->add_option("--Bell", sweep.Bell, "bound on ell")->capture_default_str();
  cs->add_option("--modulus", sweep.modulus, "congruence modulus for ell (default 2p^N)");
  cs->add_option("--fixtures", sweep_fixtures, "transcript file supplying class groups and transfers");

  cli::QuadConfig qc;
  std::optional<std::string> quad_fixtures;
  auto* qd = app.add_subcommand("quad", "Class group, unit and inert primes of Q(sqrt m)");
  qd->add_option("--m", qc.m, "squarefree m > 1")->required();
  qd->add_option("--p", qc.p, "odd prime p")->capture_default_str();
  qd->add_option("--N", qc.N, "degree p^N of the auxiliary tower")->capture_default_str();
  qd->add_option("--vHK", qc.vHK, "minimal p-valuation of #H_K")->capture_default_str();
  qd->add_option("--Bell", qc.Bell, "bound on ell")->capture_default_str();
  qd->add_option("--fixtures", quad_fixtures, "transcript file with transfer data");

  std::string analyze_path;
  auto* an = app.add_subcommand("analyze", "Verdicts for every record of a transcript file");
  an->add_option("fixture", analyze_path, "transcript file")->required();

  cli::VerifyConfig vc;
  unsigned verify_count = 0;
  auto* vf = app.add_subcommand("verify", "Run a property suite");
  vf->add_option("suite", vc.suite)
      ->required()
      ->check(CLI::IsMember({"cyclo-norms", "chevalley", "analytic-index", "characters"}));
  vf->add_option("--seed", vc.seed, "RNG seed")->capture_default_str();
  vf->add_option("--count", verify_count, "number of cases (suite default when omitted)");

  std::string sim_hk = "4,4";
  unsigned sim_n = 1, sim_count = 1;
  std::uint64_t sim_seed = 1;
  auto* sm = app.add_subcommand("simulate", "Random filtrations of H_L");
  sm->add_option("--HK", sim_hk, "cyclic orders of H_K")->capture_default_str();
  sm->add_option("--n", sim_n, "[L:K] = p^n")->capture_default_str();
  sm->add_option("--seed", sim_seed, "seed of the first run")->capture_default_str();
  sm->add_option("--count", sim_count, "number of runs, seeds counting up")->capture_default_str();

  auto* cy = app.add_subcommand("cyclo", "Cyclotomic numbers and units");
  cy->require_subcommand(1);
  unsigned long cy_f = 0, cy_m = 0;
  auto* cy_norm = cy->add_subcommand("norm", "Check N(eta_f) = eta_m^Omega");
  cy_norm->add_option("--f", cy_f, "conductor")->required();
  cy_norm->add_option("--m", cy_m, "divisor m of f")->required();
  auto* cy_theta = cy->add_subcommand("theta", "theta_chi^2 for a real quadratic conductor");
  cy_theta->add_option("--f", cy_f, "conductor of the real quadratic field")->required();
  auto* cy_index = cy->add_subcommand("index", "Exponent of the fundamental unit in theta^(2(1-sigma))");
  cy_index->add_option("--f", cy_f, "prime f = 1 mod 4")->required();

  auto* ch = app.add_subcommand("characters", "p-adic characters and phi-components");
  ch->require_subcommand(1);
  unsigned long ch_d = 1;
  long ch_p = 2;
  std::string ch_group, ch_sigma;
  std::vector<std::string> ch_values;
  bool ch_integral = false;
  auto* ch_enum = ch->add_subcommand("enumerate", "Characters of Z/d under psi -> psi^p");
  ch_enum->add_option("--d", ch_d)->required();
  ch_enum->add_option("--p", ch_p)->required();
  auto* ch_dec = ch->add_subcommand("decompose", "phi-components of a Galois module");
  ch_dec->add_option("--group", ch_group, "invariant factors, e.g. 4,4")->required();
  ch_dec->add_option("--sigma", ch_sigma, "rows separated by ';', e.g. \"0,-1;1,-1\"")->required();
  ch_dec->add_option("--d", ch_d)->required();
  ch_dec->add_option("--p", ch_p)->required();
  auto* ch_res = ch->add_subcommand("resolve", "Per-character values from per-subfield values");
  ch_res->add_option("--d", ch_d)->required();
  ch_res->add_option("values", ch_values, "t:value for each divisor t of d")->required();
  ch_res->add_flag("--integral", ch_integral);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const unsigned workers = cli::worker_count();
    cli::Result r;
    if (*cs) {
      r = cli::cubic_sweep(sweep, sweep_fixtures, workers);
    } else if (*qd) {
      r = cli::quad(qc, quad_fixtures);
    } else if (*an) {
      r = cli::analyze(analyze_path);
    } else if (*vf) {
      if (verify_count) vc.count = verify_count;
      r = cli::verify(vc, workers);
    } else if (*sm) {
      r = cli::simulate(cli::parse_int_list(sim_hk), sim_n, sim_seed, sim_count);
    } else if (*cy_norm) {
      r = cli::cyclo_norm(cy_f, cy_m);
    } else if (*cy_theta) {
      r = cli::cyclo_theta(Integer(cy_f));
    } else if (*cy_index) {
      r = cli::cyclo_index(Integer(cy_f));
    } else if (*ch_enum) {
      r = cli::characters_enumerate(ch_d, Integer(ch_p));
    } else if (*ch_dec) {
      r = cli::characters_decompose(cli::parse_int_list(ch_group), ch_sigma, ch_d, Integer(ch_p));
    } else if (*ch_res) {
      r = cli::characters_resolve(ch_d, ch_values, ch_integral);
    }
    std::cout << r.doc.dump(2) << "\n";
    return r.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "capitulab: parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "capitulab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "capitulab: internal error: " << e.what() << "\n";
    return 1;
  }
}
