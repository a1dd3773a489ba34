#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "permstab/perm.hpp"
#include "permstab/rational.hpp"
#include "permstab/words.hpp"

namespace permstab {

/// Ground truth from exhaustive search at tiny degree.
struct OracleResult {
  Rational optimum;  // minimum over exact solutions of the max displacement
  PermTuple witness;
  std::int64_t solutions_examined = 0;
};

/// Visits every rank-m tuple of the given degree with zero defect, each
/// exactly once, in lexicographic order of image arrays. Enforces the hard
/// feasibility cap (degree!)^rank <= 10^7; exceeding it is a
/// FeasibilityError, never silent sampling.
void for_each_solution(int degree, const RelatorSystem& r,
                       const std::function<void(const PermTuple&)>& visit);

/// Materialized convenience wrapper around for_each_solution.
std::vector<PermTuple> enumerate_solutions(int degree, const RelatorSystem& r);

/// The exact nearest solution under minimize-max per-generator displacement;
/// ties broken by smaller displacement sum, then by lexicographically first
/// witness.
OracleResult nearest_solution(const PermTuple& t, const RelatorSystem& r);

}  // namespace permstab
