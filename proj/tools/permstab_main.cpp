// Command-line front end: generate instances, measure defects, run the
// rounding engine and the brute-force oracle, and execute sweeps.
//
// Exit codes: 0 success/pass, 1 check failed, 2 usage error,
// 3 feasibility cap exceeded, 4 parity repair exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "permstab/instance.hpp"
#include "permstab/io.hpp"
#include "permstab/lattice.hpp"
#include "permstab/oracle.hpp"
#include "permstab/rounding.hpp"
#include "permstab/sweep.hpp"
#include "permstab/words.hpp"

namespace {

using namespace permstab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFeasibility = 3;
constexpr int kExitParity = 4;

// "a,b;c,d" rows -> HNF lattice of the column span.
IntegerLattice parse_lattice(const std::string& text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) {
    std::vector<std::int64_t> entries;
    std::istringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) entries.push_back(std::stoll(cell));
    rows.push_back(std::move(entries));
  }
  return IntegerLattice::hnf(rows);
}

// System selectors: "commutator", "bs:M,N", or "words:<w1>;<w2>;..." in the
// x1 / x2^-1 text notation. Custom word systems carry no membership oracle.
RelatorSystem parse_system(const std::string& selector, int rank) {
  if (selector == "commutator") return commutator_system(rank);
  if (selector.rfind("bs:", 0) == 0) {
    const std::string args = selector.substr(3);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad system selector '" + selector +
                               "' (expected bs:M,N)");
    return bs_system(std::stoi(args.substr(0, comma)),
                     std::stoi(args.substr(comma + 1)));
  }
  if (selector.rfind("words:", 0) == 0) {
    std::vector<FreeWord> relators;
    std::istringstream in(selector.substr(6));
    std::string word;
    while (std::getline(in, word, ';'))
      relators.push_back(FreeWord::parse(rank, word));
    return RelatorSystem(rank, std::move(relators), MembershipKind::None);
  }
  throw std::runtime_error("unknown system selector '" + selector + "'");
}

int cmd_gen(const GenSpec& spec, const std::string& out_path) {
  const PermTuple t = generate(spec);
  write_tuple_file(out_path, t);
  return kExitOk;
}

int cmd_check(const std::string& in_path, const std::string& selector,
              const std::optional<std::string>& delta_text, bool strong) {
  const PermTuple t = read_tuple_file(in_path);
  const RelatorSystem system = parse_system(selector, t.rank());
  const DefectReport report = defect(t, system);

  nlohmann::ordered_json j = defect_report_json(report, t);
  bool pass = true;
  std::optional<Rational> delta;
  if (delta_text) {
    delta = Rational::parse(*delta_text);
    const bool ok = report.is_delta_solution(*delta);
    j["delta"] = delta->to_string();
    j["delta_pass"] = ok;
    pass = pass && ok;
  }
  if (strong) {
    const Rational d = delta.value_or(Rational(1, 10));
    const StrongCheckReport sreport = strong_solution_check(t, system, d);
    j["strong"] = strong_report_json(sreport);
    pass = pass && sreport.pass;
  }
  std::cout << j.dump(2) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_round(const std::string& in_path, int radius, bool even,
              const std::string& out_path) {
  const PermTuple t = read_tuple_file(in_path);
  auto [rounded, report] = even ? round_tuple_even(t, radius)
                                : round_tuple(t, radius);
  if (report.parity_ok) write_tuple_file(out_path, rounded);
  nlohmann::ordered_json j = rounding_report_json(report);
  j["output_path"] = report.parity_ok ? out_path : "";
  std::cout << j.dump(2) << "\n";
  if (!report.parity_ok) {
    std::cerr << "parity-repair exhausted: not enough leftover points\n";
    return kExitParity;
  }
  return kExitOk;
}

int cmd_oracle(const std::string& in_path, const std::string& selector,
               const std::string& witness_path) {
  const PermTuple t = read_tuple_file(in_path);
  const RelatorSystem system = parse_system(selector, t.rank());
  const OracleResult result = nearest_solution(t, system);
  if (!witness_path.empty()) write_tuple_file(witness_path, result.witness);
  std::cout << oracle_report_json(result, witness_path).dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  const SweepConfig config = parse_sweep_config_file(config_path);
  const std::vector<SweepRow> rows = run_sweep(config);
  if (out_path.empty()) {
    write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    write_sweep_csv(out, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation tuple stability toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance tuple file");
  std::string gen_kind;
  std::vector<std::string> gen_lattices;
  int gen_copies = 1, gen_n = 0, gen_k = 2;
  std::string gen_rho = "0";
  int gen_c = 1, gen_r = 0, gen_mexp = 0, gen_nexp = 0, gen_modulus = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "zk-action | perturbed | amplified | bs-exact")
      ->required();
  gen->add_option("--lattice", gen_lattices,
                  "lattice basis rows 'a,b;c,d' (repeatable)");
  gen->add_option("--copies", gen_copies, "repeat the lattice list");
  gen->add_option("--n", gen_n, "degree (perturbed)");
  gen->add_option("--k", gen_k, "rank (perturbed)");
  gen->add_option("--rho", gen_rho, "perturbation rate, e.g. 1/100 or 0.01");
  gen->add_option("--c", gen_c, "amplification copies");
  gen->add_option("--r", gen_r, "amplification pad");
  gen->add_option("--mexp", gen_mexp, "Baumslag-Solitar exponent m");
  gen->add_option("--nexp", gen_nexp, "Baumslag-Solitar exponent n");
  gen->add_option("--modulus", gen_modulus, "Baumslag-Solitar modulus");
  gen->add_option("--seed", gen_seed, "64-bit seed");
  gen->add_option("--out", gen_out, "output tuple file")->required();

  // check
  auto* check = app.add_subcommand("check", "measure defects of a tuple file");
  std::string check_in, check_system = "commutator";
  std::optional<std::string> check_delta;
  bool check_strong = false;
  check->add_option("--in", check_in, "tuple file")->required();
  check->add_option("--system", check_system,
                    "commutator | bs:M,N | words:<w1>;<w2>");
  check->add_option("--delta", check_delta, "threshold (pass iff max defect < delta)");
  check->add_flag("--strong", check_strong,
                  "also run the strong-solution word check (uses --delta)");

  // round
  auto* round = app.add_subcommand("round", "repair a tuple to exact commutation");
  std::string round_in, round_out;
  int round_radius = 6;
  bool round_even = false;
  round->add_option("--in", round_in, "tuple file")->required();
  round->add_option("--radius", round_radius, "window radius L");
  round->add_flag("--even", round_even, "also repair parity to even outputs");
  round->add_option("--out", round_out, "output tuple file")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive nearest-solution search");
  std::string oracle_in, oracle_system = "commutator", oracle_witness;
  oracle->add_option("--in", oracle_in, "tuple file")->required();
  oracle->add_option("--system", oracle_system,
                     "commutator | bs:M,N | words:<w1>;<w2>");
  oracle->add_option("--witness-out", oracle_witness, "witness tuple file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a perturb-round experiment grid");
  std::string sweep_config, sweep_out;
  sweep->add_option("--config", sweep_config, "sweep config file")->required();
  sweep->add_option("--out", sweep_out, "output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GenSpec spec;
      spec.seed = gen_seed;
      if (gen_kind == "zk-action" || gen_kind == "amplified") {
        spec.kind = gen_kind == "zk-action" ? GenSpec::Kind::ZkAction
                                            : GenSpec::Kind::Amplified;
        for (const std::string& text : gen_lattices)
          spec.lattices.push_back(parse_lattice(text));
        spec.copies = gen_copies;
        spec.amp_copies = gen_c;
        spec.amp_pad = gen_r;
      } else if (gen_kind == "perturbed") {
        spec.kind = GenSpec::Kind::Perturbed;
        spec.degree = gen_n;
        spec.rank = gen_k;
        spec.rate = Rational::parse(gen_rho);
      } else if (gen_kind == "bs-exact") {
        spec.kind = GenSpec::Kind::BsExact;
        spec.mexp = gen_mexp;
        spec.nexp = gen_nexp;
        spec.modulus = gen_modulus;
      } else {
        throw std::runtime_error("unknown gen kind '" + gen_kind + "'");
      }
      return cmd_gen(spec, gen_out);
    }
    if (check->parsed())
      return cmd_check(check_in, check_system, check_delta, check_strong);
    if (round->parsed())
      return cmd_round(round_in, round_radius, round_even, round_out);
    if (oracle->parsed()) return cmd_oracle(oracle_in, oracle_system, oracle_witness);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
  } catch (const FeasibilityError& e) {
    std::cerr << "feasibility cap: " << e.what() << "\n";
    return kExitFeasibility;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
