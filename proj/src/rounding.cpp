#include "permstab/rounding.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "permstab/words.hpp"

namespace permstab {

namespace {

// Disjoint-set forest over point indices.
class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<int> parent_;
};

std::vector<std::vector<int>> inverse_tables(const PermTuple& t) {
  std::vector<std::vector<int>> inv(t.rank(), std::vector<int>(t.degree()));
  for (int g = 0; g < t.rank(); ++g)
    for (int x = 0; x < t.degree(); ++x) inv[g][t[g](x)] = x;
  return inv;
}

// Commutation-clean mask: clean[x] iff every pair of generators commutes at x.
std::vector<char> clean_mask(const PermTuple& t) {
  std::vector<char> clean(t.degree(), 1);
  for (int i = 0; i < t.rank(); ++i) {
    for (int j = i + 1; j < t.rank(); ++j) {
      for (int x = 0; x < t.degree(); ++x) {
        if (t[i](t[j](x)) != t[j](t[i](x))) clean[x] = 0;
      }
    }
  }
  return clean;
}

// Fills the window box of the given radius around x into `values`
// (size width^k). Axis order follows the canonical normal form
// p_1^{a_1} ... p_k^{a_k}: the last generator's line is grown first, each
// earlier generator then extends every filled cell along its own axis.
void fill_window(const PermTuple& t, const std::vector<std::vector<int>>& inv,
                 int x, int radius, std::vector<int>& values,
                 std::vector<std::int64_t>& filled) {
  const int k = t.rank();
  const int width = 2 * radius + 1;
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= width;
  values.resize(total);
  filled.clear();
  filled.reserve(total);

  std::int64_t center = 0;
  std::int64_t stride = 1;
  for (int i = k - 1; i >= 0; --i) {
    center += radius * stride;
    stride *= width;
  }
  values[center] = x;
  filled.push_back(center);

  std::int64_t axis_stride = 1;
  for (int axis = k - 1; axis >= 0; --axis) {
    const std::size_t base_count = filled.size();
    for (std::size_t f = 0; f < base_count; ++f) {
      const std::int64_t base = filled[f];
      int forward = values[base];
      int backward = values[base];
      for (int step = 1; step <= radius; ++step) {
        forward = t[axis](forward);
        backward = inv[axis][backward];
        values[base + step * axis_stride] = forward;
        values[base - step * axis_stride] = backward;
        filled.push_back(base + step * axis_stride);
        filled.push_back(base - step * axis_stride);
      }
    }
    axis_stride *= width;
  }
}

// Applies p_1^{r_1} ... p_k^{r_k} (rightmost first) to x; exponents
// nonnegative.
int apply_normal_form(const PermTuple& t, int x,
                      std::span<const std::int64_t> r) {
  int y = x;
  for (int g = t.rank() - 1; g >= 0; --g)
    for (std::int64_t s = 0; s < r[g]; ++s) y = t[g](y);
  return y;
}

bool window_all_clean(const PermTuple& t, const std::vector<std::vector<int>>& inv,
                      const std::vector<char>& clean, int x, int radius,
                      std::vector<int>& values, std::vector<std::int64_t>& filled) {
  if (radius == 0) return clean[x];
  // The fill visits every cell once; checking as we go would complicate the
  // walk, so fill then scan (the scan is cache-friendly and cheap).
  fill_window(t, inv, x, radius, values, filled);
  for (int v : values)
    if (!clean[v]) return false;
  return true;
}

struct RoundScratch {
  std::vector<int> values;
  std::vector<std::int64_t> filled;
};

std::optional<IntegerLattice> infer_from_values(int rank, int radius,
                                                const std::vector<int>& values,
                                                int base) {
  const int width = 2 * radius + 1;
  std::vector<std::vector<std::int64_t>> returns;
  for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(values.size());
       ++flat) {
    if (values[flat] != base) continue;
    std::vector<std::int64_t> a(rank);
    std::int64_t rest = flat;
    bool zero = true;
    for (int i = rank - 1; i >= 0; --i) {
      a[i] = rest % width - radius;
      rest /= width;
      if (a[i] != 0) zero = false;
    }
    if (!zero) returns.push_back(std::move(a));
  }
  auto lattice = lattice_from_span(rank, returns);
  if (!lattice) return std::nullopt;
  if (lattice->index() > static_cast<std::int64_t>(values.size()))
    return std::nullopt;
  return lattice;
}

}  // namespace

WindowTable::WindowTable(int rank, int radius, int base)
    : rank_(rank), radius_(radius), base_(base) {
  if (rank < 1) throw std::invalid_argument("WindowTable: rank must be >= 1");
  if (radius < 0) throw std::invalid_argument("WindowTable: radius must be >= 0");
}

std::int64_t WindowTable::offset(std::span<const int> a) const {
  if (static_cast<int>(a.size()) != rank_)
    throw std::invalid_argument("WindowTable: bad exponent vector");
  std::int64_t flat = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] < -radius_ || a[i] > radius_)
      throw std::invalid_argument("WindowTable: exponent outside window");
    flat = flat * width() + (a[i] + radius_);
  }
  return flat;
}

std::vector<int> WindowTable::coords(std::int64_t flat) const {
  std::vector<int> a(rank_);
  for (int i = rank_ - 1; i >= 0; --i) {
    a[i] = static_cast<int>(flat % width()) - radius_;
    flat /= width();
  }
  return a;
}

std::vector<int> defect_points(const PermTuple& t) {
  if (t.rank() < 2) throw std::invalid_argument("defect_points: rank must be >= 2");
  const std::vector<char> clean = clean_mask(t);
  std::vector<int> points;
  for (int x = 0; x < t.degree(); ++x)
    if (!clean[x]) points.push_back(x);
  return points;
}

WindowTable window_evaluate(const PermTuple& t, int x, int radius) {
  if (radius < 1) throw std::invalid_argument("window_evaluate: radius must be >= 1");
  if (x < 0 || x >= t.degree())
    throw std::invalid_argument("window_evaluate: point out of range");
  WindowTable table(t.rank(), radius, x);
  const auto inv = inverse_tables(t);
  std::vector<std::int64_t> filled;
  fill_window(t, inv, x, radius, table.values_, filled);
  return table;
}

bool is_regular(const PermTuple& t, int x, int radius) {
  if (radius < 1) throw std::invalid_argument("is_regular: radius must be >= 1");
  if (t.rank() < 2) throw std::invalid_argument("is_regular: rank must be >= 2");
  const auto inv = inverse_tables(t);
  const auto clean = clean_mask(t);
  RoundScratch scratch;
  return window_all_clean(t, inv, clean, x, radius - 1, scratch.values,
                          scratch.filled);
}

std::optional<IntegerLattice> infer_stabilizer(const WindowTable& table) {
  return infer_from_values(table.rank(), table.radius(), table.values(),
                           table.base());
}

std::vector<ComponentInfo> cluster_components(const PermTuple& t, int radius) {
  if (t.rank() < 2)
    throw std::invalid_argument("cluster_components: rank must be >= 2");
  if (radius < 1)
    throw std::invalid_argument("cluster_components: radius must be >= 1");
  const int n = t.degree();
  const int k = t.rank();
  const auto inv = inverse_tables(t);
  const auto clean = clean_mask(t);

  // Exact core: joint orbits without a defect point.
  UnionFind orbits(n);
  for (int g = 0; g < k; ++g)
    for (int x = 0; x < n; ++x) orbits.unite(x, t[g](x));
  std::vector<char> orbit_clean(n, 1);
  for (int x = 0; x < n; ++x)
    if (!clean[x]) orbit_clean[orbits.find(x)] = 0;
  std::vector<char> core(n, 0);
  for (int x = 0; x < n; ++x) core[x] = orbit_clean[orbits.find(x)];

  // Regularity of the remaining points.
  RoundScratch scratch;
  std::vector<char> regular(n, 0);
  for (int x = 0; x < n; ++x) {
    if (core[x]) continue;
    regular[x] = window_all_clean(t, inv, clean, x, radius - 1, scratch.values,
                                  scratch.filled);
  }

  // Connected components of regular points under generator moves whose
  // endpoints stay regular.
  UnionFind comps(n);
  for (int x = 0; x < n; ++x) {
    if (!regular[x]) continue;
    for (int g = 0; g < k; ++g) {
      const int y = t[g](x);
      if (regular[y]) comps.unite(x, y);
    }
  }

  std::vector<std::vector<int>> groups(n);
  for (int x = 0; x < n; ++x) {
    if (core[x])
      groups[orbits.find(x)].push_back(x);
    else if (regular[x])
      groups[comps.find(x)].push_back(x);
  }

  std::vector<ComponentInfo> result;
  for (int root = 0; root < n; ++root) {
    if (groups[root].empty()) continue;
    ComponentInfo info;
    info.points = std::move(groups[root]);  // ascending by construction
    info.base_point = info.points.front();
    if (core[info.base_point]) {
      info.status = ComponentStatus::KeptExact;
      result.push_back(std::move(info));
      continue;
    }
    // Consensus lattice: the base point's inference must match every other
    // member's and its index must equal the component size.
    info.status = ComponentStatus::Failed;
    fill_window(t, inv, info.base_point, radius, scratch.values, scratch.filled);
    auto lattice =
        infer_from_values(k, radius, scratch.values, info.base_point);
    if (lattice &&
        lattice->index() == static_cast<std::int64_t>(info.points.size())) {
      bool agree = true;
      for (std::size_t i = 1; i < info.points.size() && agree; ++i) {
        fill_window(t, inv, info.points[i], radius, scratch.values,
                    scratch.filled);
        auto other =
            infer_from_values(k, radius, scratch.values, info.points[i]);
        agree = other.has_value() && *other == *lattice;
      }
      if (agree) {
        info.status = ComponentStatus::Repaired;
        info.lattice = std::move(lattice);
      }
    }
    result.push_back(std::move(info));
  }
  // groups were scanned by root index, and each root is the smallest member,
  // so the result is already ordered by smallest point.
  return result;
}

std::optional<std::vector<PartialAssignment>> repair_component(
    const PermTuple& t, const ComponentInfo& comp) {
  if (comp.status != ComponentStatus::Repaired || !comp.lattice)
    throw std::invalid_argument("repair_component: component is not repairable");
  const IntegerLattice& lattice = *comp.lattice;
  const int k = t.rank();
  const int n = t.degree();
  const std::int64_t index = lattice.index();
  if (index != static_cast<std::int64_t>(comp.points.size()))
    throw std::invalid_argument("repair_component: index does not match size");

  std::vector<char> in_comp(n, 0);
  for (int x : comp.points) in_comp[x] = 1;

  // Mixed-radix slot labels for canonical residues (lexicographic order).
  std::vector<std::int64_t> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * lattice.at(i + 1, i + 1);
  auto slot_of = [&](std::span<const std::int64_t> residue) {
    std::int64_t slot = 0;
    for (int i = 0; i < k; ++i) slot += residue[i] * stride[i];
    return slot;
  };

  // Chart: walk every canonical residue from the base point; the map must be
  // a bijection onto the component or the component is demoted.
  std::vector<int> chart(index);
  std::vector<char> used(n, 0);
  std::vector<std::int64_t> residue(k, 0);
  for (std::int64_t slot = 0; slot < index; ++slot) {
    const int point = apply_normal_form(t, comp.base_point, residue);
    if (!in_comp[point] || used[point]) return std::nullopt;
    used[point] = 1;
    chart[slot] = point;
    for (int i = k - 1; i >= 0; --i) {
      if (++residue[i] < lattice.at(i, i)) break;
      residue[i] = 0;
    }
  }

  std::vector<PartialAssignment> assignments(k, PartialAssignment(n));
  std::fill(residue.begin(), residue.end(), 0);
  for (std::int64_t slot = 0; slot < index; ++slot) {
    for (int g = 0; g < k; ++g) {
      std::vector<std::int64_t> moved = residue;
      moved[g] += 1;
      assignments[g].set(chart[slot], chart[slot_of(lattice.reduce(moved))]);
    }
    for (int i = k - 1; i >= 0; --i) {
      if (++residue[i] < lattice.at(i, i)) break;
      residue[i] = 0;
    }
  }
  return assignments;
}

namespace {

struct RoundCore {
  PermTuple output;
  RoundingReport report;
  std::vector<int> leftover;  // ascending
};

RoundCore round_core(const PermTuple& t, int radius) {
  if (t.rank() < 2) throw std::invalid_argument("round_tuple: rank must be >= 2");
  if (radius < 1) throw std::invalid_argument("round_tuple: radius must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const int n = t.degree();
  const int k = t.rank();

  std::vector<ComponentInfo> comps = cluster_components(t, radius);

  std::vector<std::vector<int>> out(k, std::vector<int>(n));
  for (int g = 0; g < k; ++g) std::iota(out[g].begin(), out[g].end(), 0);
  std::vector<char> covered(n, 0);

  RoundingReport report;
  report.window_radius = radius;
  for (ComponentInfo& comp : comps) {
    switch (comp.status) {
      case ComponentStatus::KeptExact:
        for (int x : comp.points) {
          covered[x] = 1;
          for (int g = 0; g < k; ++g) out[g][x] = t[g](x);
        }
        ++report.components_kept;
        break;
      case ComponentStatus::Repaired: {
        auto assignments = repair_component(t, comp);
        if (!assignments) {
          comp.status = ComponentStatus::Failed;  // chart conflict: demote
          ++report.components_failed;
          break;
        }
        for (int x : comp.points) {
          covered[x] = 1;
          for (int g = 0; g < k; ++g) out[g][x] = (*assignments)[g](x);
        }
        ++report.components_repaired;
        break;
      }
      case ComponentStatus::Failed:
        ++report.components_failed;
        break;
    }
  }

  RoundCore core{PermTuple({Permutation::identity(1)}), std::move(report), {}};
  for (int x = 0; x < n; ++x)
    if (!covered[x]) core.leftover.push_back(x);

  std::vector<Permutation> perms;
  perms.reserve(k);
  for (int g = 0; g < k; ++g)
    perms.push_back(Permutation::from_images(std::move(out[g])));
  core.output = PermTuple(std::move(perms));

  core.report.leftover_fraction =
      Rational(static_cast<std::int64_t>(core.leftover.size()), n);
  for (int g = 0; g < k; ++g) {
    core.report.displacement.push_back(hamming(t[g], core.output[g]));
    core.report.sum_displacement += core.report.displacement.back();
    if (core.report.displacement.back() > core.report.max_displacement)
      core.report.max_displacement = core.report.displacement.back();
  }
  core.report.residual_defect =
      defect(core.output, commutator_system(k)).max_defect;
  if (!core.report.residual_defect.is_zero())
    throw std::logic_error("round_tuple: output fails to commute");
  core.report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return core;
}

}  // namespace

std::pair<PermTuple, RoundingReport> round_tuple(const PermTuple& t, int radius) {
  RoundCore core = round_core(t, radius);
  return {std::move(core.output), std::move(core.report)};
}

std::pair<PermTuple, RoundingReport> round_tuple_even(const PermTuple& t,
                                                      int radius) {
  const auto start = std::chrono::steady_clock::now();
  RoundCore core = round_core(t, radius);
  const int k = t.rank();

  std::vector<int> odd;
  for (int g = 0; g < k; ++g)
    if (sign(core.output[g]) < 0) odd.push_back(g);

  if (odd.empty()) {
    return {std::move(core.output), std::move(core.report)};
  }
  if (core.leftover.size() < 2 * odd.size()) {
    core.report.parity_ok = false;  // parity-repair exhausted
    return {std::move(core.output), std::move(core.report)};
  }

  // Disjoint transpositions on leftover points (which every output generator
  // fixes) commute with everything in sight; pairs are taken smallest-first.
  std::vector<Permutation> perms = core.output.perms();
  std::size_t next = 0;
  for (int g : odd) {
    const int a = core.leftover[next++];
    const int b = core.leftover[next++];
    perms[g] = compose(perms[g], transposition(t.degree(), a, b));
  }
  core.output = PermTuple(std::move(perms));
  core.report.parity_fixes = static_cast<int>(odd.size());

  core.report.displacement.clear();
  core.report.sum_displacement = Rational(0);
  core.report.max_displacement = Rational(0);
  for (int g = 0; g < k; ++g) {
    core.report.displacement.push_back(hamming(t[g], core.output[g]));
    core.report.sum_displacement += core.report.displacement.back();
    if (core.report.displacement.back() > core.report.max_displacement)
      core.report.max_displacement = core.report.displacement.back();
  }
  core.report.residual_defect =
      defect(core.output, commutator_system(k)).max_defect;
  if (!core.report.residual_defect.is_zero())
    throw std::logic_error("round_tuple_even: output fails to commute");
  core.report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return {std::move(core.output), std::move(core.report)};
}

}  // namespace permstab
