#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "permstab/oracle.hpp"
#include "permstab/perm.hpp"
#include "permstab/rounding.hpp"
#include "permstab/words.hpp"

namespace permstab {

/// Line-oriented tuple file:
///   permtuple v1 n=<degree> m=<rank>
///   <degree space-separated 0-based images>     (one line per generator)
/// LF line endings, no trailing whitespace. Writing then parsing is the
/// identity, byte for byte.
void write_tuple(std::ostream& out, const PermTuple& t);
void write_tuple_file(const std::string& path, const PermTuple& t);
PermTuple read_tuple(std::istream& in);
PermTuple read_tuple_file(const std::string& path);

/// JSON report builders. All reports are single objects with fixed key
/// order; rationals appear as exact "num/den" strings with a float
/// convenience twin suffixed _f.
nlohmann::ordered_json defect_report_json(const DefectReport& report,
                                          const PermTuple& t);
nlohmann::ordered_json strong_report_json(const StrongCheckReport& report);
nlohmann::ordered_json rounding_report_json(const RoundingReport& report);
nlohmann::ordered_json oracle_report_json(const OracleResult& result,
                                          const std::string& witness_path);

}  // namespace permstab
