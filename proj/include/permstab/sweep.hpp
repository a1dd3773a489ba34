#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permstab/rational.hpp"

namespace permstab {

/// Declarative sweep grid. Parsed from a key = value file with
/// comma-separated arrays; seeds accept "a..b" ranges. No ambient
/// randomness: every cell is a pure function of its row values.
struct SweepConfig {
  std::vector<int> degrees;           // n
  std::vector<int> ranks;             // k
  std::vector<Rational> rates;        // rho
  std::vector<int> radii;             // L
  std::vector<std::uint64_t> seeds;
  std::string system = "commutator";  // only commutator tuples are rounded
  int threads = 1;
};

SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config_file(const std::string& path);

struct SweepRow {
  int degree = 0;
  int rank = 0;
  Rational rate;
  int radius = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // or an error message
  Rational input_max_defect;
  Rational max_displacement;
  Rational sum_displacement;
  Rational leftover_fraction;
  int components_kept = 0;
  int components_repaired = 0;
  int components_failed = 0;
  std::int64_t wall_ms = 0;
};

/// Runs every cell of the grid (n x k x rho x L x seed, in declaration
/// order): generate a random commuting tuple, perturb it at the cell rate,
/// round it, and record the results. Cell failures are recorded in-row and
/// the sweep continues. Cells may run on a small thread pool; rows always
/// come back in grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// CSV with a fixed header; exact rationals as num/den strings next to
/// float convenience columns. Identical configs give identical bytes except
/// for the wall_ms column.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace permstab
