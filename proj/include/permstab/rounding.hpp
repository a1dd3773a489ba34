#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "permstab/lattice.hpp"
#include "permstab/perm.hpp"
#include "permstab/rational.hpp"

namespace permstab {

/// Finite truncation of the orbit map at one point: V(a) is the image of the
/// base point under p_1^{a_1} ... p_k^{a_k} (rightmost factor applied first)
/// for every exponent vector a with |a_i| <= radius.
class WindowTable {
public:
  WindowTable(int rank, int radius, int base);

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  int base() const { return base_; }
  int width() const { return 2 * radius_ + 1; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  int at(std::span<const int> a) const { return values_[offset(a)]; }
  int at_flat(std::int64_t flat) const { return values_[flat]; }
  const std::vector<int>& values() const { return values_; }

  /// Exponent vector of a flat index.
  std::vector<int> coords(std::int64_t flat) const;

private:
  std::int64_t offset(std::span<const int> a) const;

  int rank_;
  int radius_;
  int base_;
  std::vector<int> values_;

  friend WindowTable window_evaluate(const PermTuple&, int, int);
};

/// Points where some pair of generators fails to commute:
/// p_i(p_j(x)) != p_j(p_i(x)) for some i < j. Sorted.
std::vector<int> defect_points(const PermTuple& t);

WindowTable window_evaluate(const PermTuple& t, int x, int radius);

/// Local exactness certificate: every point visited by the window of radius
/// L-1 around x has all pairwise commutation squares closed. Regular points
/// have path-independent windows out to the radius that matters.
bool is_regular(const PermTuple& t, int x, int radius);

/// Candidate stabilizer lattice from the return vectors
/// {a in B_L : V(a) = base}: the HNF of their integer span, or nullopt
/// ("undetermined") when the span has rank < k or the implied index exceeds
/// the window size.
std::optional<IntegerLattice> infer_stabilizer(const WindowTable& table);

enum class ComponentStatus { Repaired, KeptExact, Failed };

struct ComponentInfo {
  std::vector<int> points;  // sorted ascending
  /// Consensus lattice for Repaired components; empty otherwise.
  std::optional<IntegerLattice> lattice;
  int base_point = 0;  // smallest point
  ComponentStatus status = ComponentStatus::Failed;
};

/// Partition of (a subset of) the points:
///   - joint orbits containing no defect point become KeptExact components
///     (the exact core, never modified);
///   - remaining regular points cluster into connected components under
///     generator moves between regular points; a component whose member
///     stabilizer inferences all agree on one lattice of index |C| is
///     Repaired, otherwise Failed.
/// Components are ordered by smallest point.
std::vector<ComponentInfo> cluster_components(const PermTuple& t, int radius);

/// Replaces the approximate action on a Repaired component by the exact
/// translation action of Z^k on Z^k/H via a chart grown from the base point.
/// Returns one assignment per generator (all supported exactly on the
/// component, pairwise commuting), or nullopt when the chart fails to be a
/// bijection onto the component (the caller demotes the component).
std::optional<std::vector<PartialAssignment>> repair_component(
    const PermTuple& t, const ComponentInfo& comp);

struct RoundingReport {
  std::vector<Rational> displacement;  // per generator
  Rational max_displacement;
  Rational sum_displacement;
  Rational residual_defect;  // always 0 on success
  Rational leftover_fraction;
  int components_kept = 0;
  int components_repaired = 0;
  int components_failed = 0;
  int window_radius = 0;
  std::int64_t wall_ms = 0;
  /// Even variant only: number of generators fixed by a parity transposition,
  /// and whether enough leftover points existed to fix them all.
  int parity_fixes = 0;
  bool parity_ok = true;
};

/// Rounds a tuple to an exactly commuting tuple: keeps the exact core,
/// rewrites repaired components by their chart action, and fills every
/// leftover point with the identity. The output always has zero commutator
/// defect; quality (displacement) varies with the input.
std::pair<PermTuple, RoundingReport> round_tuple(const PermTuple& t, int radius);

/// round_tuple, then parity repair: any odd output generator is composed
/// with a transposition of two leftover points (fixed by all outputs), which
/// preserves commutation. When fewer than 2 leftover points per odd
/// generator remain, the report carries parity_ok = false and the non-even
/// result is returned as-is.
std::pair<PermTuple, RoundingReport> round_tuple_even(const PermTuple& t,
                                                      int radius);

}  // namespace permstab
