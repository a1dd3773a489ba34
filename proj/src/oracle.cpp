#include "permstab/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace permstab {

namespace {

constexpr std::int64_t kTupleCap = 10'000'000;

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_cap(int degree, int rank) {
  // (degree!)^rank <= cap. degree! alone exceeds the cap from degree 11 on.
  if (degree > 10) throw FeasibilityError("oracle: enumeration cap exceeded");
  const std::int64_t f = factorial(degree);
  __int128 total = 1;
  for (int i = 0; i < rank; ++i) {
    total *= f;
    if (total > kTupleCap) throw FeasibilityError("oracle: enumeration cap exceeded");
  }
}

bool is_zero_defect(const PermTuple& t, const RelatorSystem& r) {
  for (const FreeWord& w : r.relators())
    if (!evaluate(w, t).is_identity()) return false;
  return true;
}

bool is_pure_commutator_system(const RelatorSystem& r) {
  if (r.kind() != MembershipKind::AbelianCommutator) return false;
  // Shape check: exactly the [xi, xj] relators for i < j.
  const int k = r.rank();
  if (static_cast<int>(r.relators().size()) != k * (k - 1) / 2) return false;
  std::size_t at = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::vector<Letter> expect{{i, 1}, {j, 1}, {i, -1}, {j, -1}};
      if (r.relators()[at++].letters() != expect) return false;
    }
  }
  return true;
}

}  // namespace

void for_each_solution(int degree, const RelatorSystem& r,
                       const std::function<void(const PermTuple&)>& visit) {
  check_cap(degree, r.rank());

  if (r.rank() == 2 && is_pure_commutator_system(r)) {
    // Commuting pairs: walk q over the brute-forced centralizer of each p.
    // Same output set and order as the naive double loop, fewer relator
    // evaluations.
    std::vector<Permutation> all;
    all.reserve(static_cast<std::size_t>(factorial(degree)));
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 0);
    do {
      all.push_back(Permutation::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));

    for (const Permutation& p : all) {
      std::vector<const Permutation*> centralizer;
      for (const Permutation& q : all)
        if (compose(p, q) == compose(q, p)) centralizer.push_back(&q);
      for (const Permutation* q : centralizer) visit(PermTuple({p, *q}));
    }
    return;
  }

  // Generic path: nested lexicographic enumeration with a defect filter at
  // the leaves. No materialized permutation list, so rank-1 systems at the
  // cap stay cheap on memory.
  std::vector<Permutation> slots;
  slots.reserve(r.rank());
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == r.rank()) {
      PermTuple t(slots);
      if (is_zero_defect(t, r)) visit(t);
      return;
    }
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 0);
    do {
      slots.push_back(Permutation::from_images(images));
      self(self, depth + 1);
      slots.pop_back();
    } while (std::next_permutation(images.begin(), images.end()));
  };
  recurse(recurse, 0);
}

std::vector<PermTuple> enumerate_solutions(int degree, const RelatorSystem& r) {
  std::vector<PermTuple> out;
  for_each_solution(degree, r, [&](const PermTuple& t) { out.push_back(t); });
  return out;
}

OracleResult nearest_solution(const PermTuple& t, const RelatorSystem& r) {
  if (t.rank() != r.rank())
    throw std::invalid_argument("nearest_solution: rank mismatch");
  bool have = false;
  Rational best_max, best_sum;
  PermTuple witness = t;
  std::int64_t examined = 0;

  for_each_solution(t.degree(), r, [&](const PermTuple& candidate) {
    ++examined;
    Rational max_disp, sum_disp;
    for (int g = 0; g < t.rank(); ++g) {
      const Rational d = hamming(t[g], candidate[g]);
      sum_disp += d;
      if (d > max_disp) max_disp = d;
    }
    // Strict improvement only: the enumeration is lexicographic, so the
    // first tuple attaining (max, sum) is the lexicographically first
    // witness.
    if (!have || max_disp < best_max ||
        (max_disp == best_max && sum_disp < best_sum)) {
      have = true;
      best_max = max_disp;
      best_sum = sum_disp;
      witness = candidate;
    }
  });

  if (!have) throw std::logic_error("nearest_solution: empty solution set");
  return OracleResult{best_max, std::move(witness), examined};
}

}  // namespace permstab
