#include "permstab/sweep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permstab/instance.hpp"
#include "permstab/rounding.hpp"
#include "permstab/words.hpp"

namespace permstab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("sweep config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n") {
        for (const auto& v : split_csv(value)) config.degrees.push_back(std::stoi(v));
      } else if (key == "k") {
        for (const auto& v : split_csv(value)) config.ranks.push_back(std::stoi(v));
      } else if (key == "rho") {
        for (const auto& v : split_csv(value)) config.rates.push_back(Rational::parse(v));
      } else if (key == "L") {
        for (const auto& v : split_csv(value)) config.radii.push_back(std::stoi(v));
      } else if (key == "seeds") {
        for (const auto& v : split_csv(value)) {
          const auto dots = v.find("..");
          if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(v.substr(0, dots));
            const std::uint64_t hi = std::stoull(v.substr(dots + 2));
            if (hi < lo) throw std::runtime_error("bad seed range " + v);
            for (std::uint64_t s = lo; s <= hi; ++s) config.seeds.push_back(s);
          } else {
            config.seeds.push_back(std::stoull(v));
          }
        }
      } else if (key == "system") {
        config.system = value;
      } else if (key == "threads") {
        config.threads = std::stoi(value);
      } else {
        throw std::runtime_error("unknown key '" + key + "'");
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep config line " + std::to_string(lineno) +
                               ": " + e.what());
    }
  }
  if (config.degrees.empty() || config.ranks.empty() || config.rates.empty() ||
      config.radii.empty() || config.seeds.empty())
    throw std::runtime_error(
        "sweep config: n, k, rho, L, seeds must all be nonempty");
  if (config.system != "commutator")
    throw std::runtime_error("sweep config: only system = commutator is supported");
  if (config.threads < 1)
    throw std::runtime_error("sweep config: threads must be >= 1");
  return config;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return parse_sweep_config(in);
}

namespace {

void run_cell(SweepRow& row) {
  try {
    const PermTuple base =
        random_commuting_tuple(row.degree, row.rank, row.seed);
    const PermTuple input = perturb(base, row.rate, row.seed);
    const RelatorSystem system = commutator_system(row.rank);
    row.input_max_defect = defect(input, system).max_defect;
    auto [rounded, report] = round_tuple(input, row.radius);
    row.max_displacement = report.max_displacement;
    row.sum_displacement = report.sum_displacement;
    row.leftover_fraction = report.leftover_fraction;
    row.components_kept = report.components_kept;
    row.components_repaired = report.components_repaired;
    row.components_failed = report.components_failed;
    row.wall_ms = report.wall_ms;
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  for (int n : config.degrees)
    for (int k : config.ranks)
      for (const Rational& rho : config.rates)
        for (int radius : config.radii)
          for (std::uint64_t seed : config.seeds) {
            SweepRow row;
            row.degree = n;
            row.rank = k;
            row.rate = rho;
            row.radius = radius;
            row.seed = seed;
            rows.push_back(std::move(row));
          }

  const int workers =
      std::max(1, std::min<int>(config.threads, static_cast<int>(rows.size())));
  if (workers == 1) {
    for (SweepRow& row : rows) run_cell(row);
  } else {
    // Cells are independent and pure; rows stay in grid order regardless of
    // completion order.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= rows.size()) break;
          run_cell(rows[i]);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,k,rho,L,seed,status,input_max_defect,input_max_defect_f,"
         "max_displacement,max_displacement_f,sum_displacement,"
         "sum_displacement_f,leftover_fraction,leftover_fraction_f,"
         "components_kept,components_repaired,components_failed,wall_ms\n";
  for (const SweepRow& row : rows) {
    out << row.degree << ',' << row.rank << ',' << row.rate.to_string() << ','
        << row.radius << ',' << row.seed << ',' << row.status << ','
        << row.input_max_defect.to_string() << ','
        << row.input_max_defect.to_double() << ','
        << row.max_displacement.to_string() << ','
        << row.max_displacement.to_double() << ','
        << row.sum_displacement.to_string() << ','
        << row.sum_displacement.to_double() << ','
        << row.leftover_fraction.to_string() << ','
        << row.leftover_fraction.to_double() << ',' << row.components_kept
        << ',' << row.components_repaired << ',' << row.components_failed
        << ',' << row.wall_ms << "\n";
  }
}

}  // namespace permstab
