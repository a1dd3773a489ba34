#include "permstab/io.hpp"

#include <fstream>
#include <sstream>

namespace permstab {

namespace {

void add_rational(nlohmann::ordered_json& j, const std::string& key,
                  const Rational& value) {
  j[key] = value.to_string();
  j[key + "_f"] = value.to_double();
}

}  // namespace

void write_tuple(std::ostream& out, const PermTuple& t) {
  out << "permtuple v1 n=" << t.degree() << " m=" << t.rank() << "\n";
  for (int g = 0; g < t.rank(); ++g) {
    const auto& images = t[g].images();
    for (int x = 0; x < t.degree(); ++x) {
      if (x) out << ' ';
      out << images[x];
    }
    out << "\n";
  }
}

void write_tuple_file(const std::string& path, const PermTuple& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_tuple(out, t);
  if (!out) throw std::runtime_error("write failed: " + path);
}

PermTuple read_tuple(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("tuple file: missing header");
  int degree = 0, rank = 0;
  {
    std::istringstream hs(header);
    std::string magic, version, nfield, mfield;
    hs >> magic >> version >> nfield >> mfield;
    if (magic != "permtuple" || version != "v1" ||
        nfield.rfind("n=", 0) != 0 || mfield.rfind("m=", 0) != 0)
      throw std::runtime_error("tuple file: bad header '" + header + "'");
    try {
      degree = std::stoi(nfield.substr(2));
      rank = std::stoi(mfield.substr(2));
    } catch (const std::exception&) {
      throw std::runtime_error("tuple file: bad header '" + header + "'");
    }
  }
  if (degree < 1 || rank < 1)
    throw std::runtime_error("tuple file: bad dimensions in header");

  std::vector<Permutation> perms;
  perms.reserve(rank);
  std::string line;
  for (int g = 0; g < rank; ++g) {
    if (!std::getline(in, line))
      throw std::runtime_error("tuple file: missing image line " +
                               std::to_string(g + 1));
    std::istringstream ls(line);
    std::vector<int> images(degree);
    for (int x = 0; x < degree; ++x) {
      if (!(ls >> images[x]))
        throw std::runtime_error("tuple file: short image line " +
                                 std::to_string(g + 1));
    }
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error("tuple file: trailing data on image line " +
                               std::to_string(g + 1));
    perms.push_back(Permutation::from_images(std::move(images)));
  }
  return PermTuple(std::move(perms));
}

PermTuple read_tuple_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_tuple(in);
}

nlohmann::ordered_json defect_report_json(const DefectReport& report,
                                          const PermTuple& t) {
  nlohmann::ordered_json j;
  j["degree"] = t.degree();
  j["rank"] = t.rank();
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const Rational& d : report.per_relator) {
    nlohmann::ordered_json entry;
    add_rational(entry, "defect", d);
    per.push_back(std::move(entry));
  }
  j["per_relator"] = std::move(per);
  add_rational(j, "max_defect", report.max_defect);
  j["is_solution"] = report.is_solution();
  j["defect_point_count"] = report.defect_points.size();
  return j;
}

nlohmann::ordered_json strong_report_json(const StrongCheckReport& report) {
  nlohmann::ordered_json j;
  j["pass"] = report.pass;
  add_rational(j, "delta", report.delta);
  j["max_word_length"] = report.max_length;
  j["words_checked"] = report.words_checked;
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const StrongViolation& v : report.violations) {
    nlohmann::ordered_json entry;
    entry["word"] = v.word.to_text();
    entry["in_closure"] = v.in_closure;
    add_rational(entry, "distance", v.distance);
    violations.push_back(std::move(entry));
  }
  j["violations"] = std::move(violations);
  return j;
}

nlohmann::ordered_json rounding_report_json(const RoundingReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const Rational& d : report.displacement) {
    nlohmann::ordered_json entry;
    add_rational(entry, "displacement", d);
    per.push_back(std::move(entry));
  }
  j["per_generator"] = std::move(per);
  add_rational(j, "max_displacement", report.max_displacement);
  add_rational(j, "sum_displacement", report.sum_displacement);
  add_rational(j, "residual_defect", report.residual_defect);
  add_rational(j, "leftover_fraction", report.leftover_fraction);
  j["components_kept"] = report.components_kept;
  j["components_repaired"] = report.components_repaired;
  j["components_failed"] = report.components_failed;
  j["window_radius"] = report.window_radius;
  j["parity_fixes"] = report.parity_fixes;
  j["parity_ok"] = report.parity_ok;
  j["wall_ms"] = report.wall_ms;
  return j;
}

nlohmann::ordered_json oracle_report_json(const OracleResult& result,
                                          const std::string& witness_path) {
  nlohmann::ordered_json j;
  add_rational(j, "optimum", result.optimum);
  j["solutions_examined"] = result.solutions_examined;
  j["witness_path"] = witness_path;
  return j;
}

}  // namespace permstab
