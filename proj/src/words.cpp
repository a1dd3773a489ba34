#include "permstab/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace permstab {

namespace {

void check_rank(int rank) {
  if (rank < 1) throw std::invalid_argument("FreeWord: rank must be >= 1");
}

}  // namespace

FreeWord FreeWord::empty(int rank) {
  check_rank(rank);
  return FreeWord(rank, {});
}

FreeWord FreeWord::reduce(int rank, std::span<const Letter> raw) {
  check_rank(rank);
  std::vector<Letter> out;
  for (const Letter& l : raw) {
    if (l.gen < 0 || l.gen >= rank)
      throw std::invalid_argument("FreeWord: generator index out of range");
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return FreeWord(rank, std::move(out));
}

FreeWord FreeWord::generator(int rank, int gen, int exp) {
  return reduce(rank, std::vector<Letter>{{gen, exp}});
}

FreeWord FreeWord::parse(int rank, const std::string& text) {
  check_rank(rank);
  std::istringstream in(text);
  std::vector<Letter> raw;
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || token[0] != 'x')
      throw std::invalid_argument("FreeWord: bad token '" + token + "'");
    const auto caret = token.find('^');
    const std::string idx = token.substr(1, caret == std::string::npos
                                                ? std::string::npos
                                                : caret - 1);
    int gen;
    try {
      gen = std::stoi(idx) - 1;
    } catch (const std::exception&) {
      throw std::invalid_argument("FreeWord: bad token '" + token + "'");
    }
    int exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoi(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("FreeWord: bad exponent in '" + token + "'");
      }
    }
    if (gen < 0 || gen >= rank)
      throw std::invalid_argument("FreeWord: generator index out of range in '" +
                                  token + "'");
    raw.push_back({gen, exp});
  }
  return reduce(rank, raw);
}

int FreeWord::length() const {
  int len = 0;
  for (const Letter& l : letters_) len += std::abs(l.exp);
  return len;
}

FreeWord FreeWord::concat(const FreeWord& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("FreeWord: rank mismatch");
  std::vector<Letter> raw = letters_;
  raw.insert(raw.end(), o.letters_.begin(), o.letters_.end());
  return reduce(rank_, raw);
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> raw(letters_.rbegin(), letters_.rend());
  for (Letter& l : raw) l.exp = -l.exp;
  return FreeWord(rank_, std::move(raw));
}

FreeWord FreeWord::power(int e) const {
  FreeWord base = e < 0 ? inverse() : *this;
  FreeWord acc = FreeWord::empty(rank_);
  for (int i = 0; i < std::abs(e); ++i) acc = acc.concat(base);
  return acc;
}

std::vector<std::int64_t> FreeWord::exponent_sums() const {
  std::vector<std::int64_t> sums(rank_, 0);
  for (const Letter& l : letters_) sums[l.gen] += l.exp;
  return sums;
}

std::string FreeWord::to_text() const {
  std::string out;
  for (const Letter& l : letters_) {
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(l.gen + 1);
    if (l.exp != 1) out += '^' + std::to_string(l.exp);
  }
  return out;
}

Permutation evaluate(const FreeWord& w, const PermTuple& t) {
  if (w.rank() != t.rank()) throw std::invalid_argument("evaluate: rank mismatch");
  const int n = t.degree();
  // Precompute inverse image tables for the generators that occur with
  // negative exponents, then walk each point through the letters
  // right-to-left (composition applies the rightmost letter first).
  std::vector<std::vector<int>> inv(t.rank());
  for (const Letter& l : w.letters()) {
    if (l.exp < 0 && inv[l.gen].empty()) {
      inv[l.gen].resize(n);
      for (int x = 0; x < n; ++x) inv[l.gen][t[l.gen](x)] = x;
    }
  }
  std::vector<int> images(n);
  for (int x = 0; x < n; ++x) {
    int y = x;
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      if (it->exp > 0) {
        for (int s = 0; s < it->exp; ++s) y = t[it->gen](y);
      } else {
        for (int s = 0; s < -it->exp; ++s) y = inv[it->gen][y];
      }
    }
    images[x] = y;
  }
  return Permutation::from_images(std::move(images));
}

RelatorSystem::RelatorSystem(int rank, std::vector<FreeWord> relators,
                             MembershipKind kind)
    : rank_(rank), relators_(std::move(relators)), kind_(kind) {
  check_rank(rank);
  if (relators_.empty())
    throw std::invalid_argument("RelatorSystem: relators must be nonempty");
  for (const FreeWord& w : relators_)
    if (w.rank() != rank)
      throw std::invalid_argument("RelatorSystem: relator rank mismatch");
}

bool RelatorSystem::member(const FreeWord& w) const {
  switch (kind_) {
    case MembershipKind::AbelianCommutator:
      return abelian_membership(w, *this);
    case MembershipKind::Trivial: {
      if (w.is_empty()) return true;
      for (const FreeWord& r : relators_) {
        if (r.is_empty()) continue;
        for (int e = 1; r.length() * e <= w.length(); ++e) {
          if (w == r.power(e) || w == r.power(-e)) return true;
        }
      }
      return false;
    }
    case MembershipKind::None:
      throw std::invalid_argument("RelatorSystem: no membership oracle");
  }
  throw std::logic_error("RelatorSystem: bad kind");
}

RelatorSystem commutator_system(int k) {
  if (k < 2) throw std::invalid_argument("commutator_system: rank must be >= 2");
  std::vector<FreeWord> relators;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::vector<Letter> raw{{i, 1}, {j, 1}, {i, -1}, {j, -1}};
      relators.push_back(FreeWord::reduce(k, raw));
    }
  }
  return RelatorSystem(k, std::move(relators), MembershipKind::AbelianCommutator);
}

RelatorSystem bs_system(int mexp, int nexp) {
  if (mexp == 0 || nexp == 0)
    throw std::invalid_argument("bs_system: exponents must be nonzero");
  const std::vector<Letter> raw{{1, -1}, {0, mexp}, {1, 1}, {0, -nexp}};
  return RelatorSystem(2, {FreeWord::reduce(2, raw)}, MembershipKind::None);
}

bool abelian_membership(const FreeWord& w, const RelatorSystem& r) {
  if (r.kind() != MembershipKind::AbelianCommutator)
    throw std::invalid_argument("abelian_membership: wrong membership kind");
  if (w.rank() != r.rank())
    throw std::invalid_argument("abelian_membership: rank mismatch");
  for (std::int64_t s : w.exponent_sums())
    if (s != 0) return false;
  return true;
}

DefectReport defect(const PermTuple& t, const RelatorSystem& r) {
  if (t.rank() != r.rank()) throw std::invalid_argument("defect: rank mismatch");
  DefectReport report;
  std::vector<char> moved(t.degree(), 0);
  for (const FreeWord& w : r.relators()) {
    const Permutation image = evaluate(w, t);
    std::int64_t count = 0;
    for (int x = 0; x < t.degree(); ++x) {
      if (image(x) != x) {
        ++count;
        moved[x] = 1;
      }
    }
    report.per_relator.emplace_back(count, t.degree());
    if (report.per_relator.back() > report.max_defect)
      report.max_defect = report.per_relator.back();
  }
  for (int x = 0; x < t.degree(); ++x)
    if (moved[x]) report.defect_points.push_back(x);
  return report;
}

namespace {

// Reduced words as sequences of single-step letters (generator, sign).
// Letter order: x1 < x1^-1 < x2 < x2^-1 < ...; a step may not be followed by
// its own inverse. Enumeration is breadth-first, so reports come out in
// length-then-lexicographic order.
struct Step {
  int gen;
  int dir;  // +1 or -1
};

FreeWord steps_to_word(int rank, const std::vector<Step>& steps) {
  std::vector<Letter> raw;
  raw.reserve(steps.size());
  for (const Step& s : steps) raw.push_back({s.gen, s.dir});
  return FreeWord::reduce(rank, raw);
}

}  // namespace

StrongCheckReport strong_solution_check(const PermTuple& t, const RelatorSystem& r,
                                        const Rational& delta,
                                        std::int64_t word_cap) {
  if (t.rank() != r.rank())
    throw std::invalid_argument("strong_solution_check: rank mismatch");
  if (r.kind() == MembershipKind::None)
    throw std::invalid_argument(
        "strong_solution_check: system has no membership oracle");
  if (!(Rational(0) < delta) || Rational(1) < delta)
    throw std::invalid_argument("strong_solution_check: delta must be in (0, 1]");

  // Largest integer length c with c < 1/delta, i.e. c*num < den.
  const std::int64_t num = delta.num();
  const std::int64_t den = delta.den();
  const int max_len = static_cast<int>((den - 1) / num);

  // Count words of length <= max_len before enumerating; the count is
  // 1 + sum_l 2m*(2m-1)^(l-1) and must stay within the cap.
  const int m = t.rank();
  std::int64_t total = 1;
  std::int64_t level = 2 * static_cast<std::int64_t>(m);
  for (int l = 1; l <= max_len; ++l) {
    total += level;
    if (total > word_cap)
      throw FeasibilityError("strong_solution_check: enumeration cap exceeded (" +
                             std::to_string(word_cap) + " words)");
    if (level > word_cap) level = word_cap + 1;  // clamp, already too big next level
    level *= (2 * m - 1);
  }

  StrongCheckReport report;
  report.delta = delta;
  report.max_length = max_len;

  const Rational one_minus_delta = Rational(1) - delta;
  const Permutation id = Permutation::identity(t.degree());

  auto classify = [&](const FreeWord& w) {
    ++report.words_checked;
    const bool in = r.member(w);
    const Rational dist = hamming(evaluate(w, t), id);
    const bool ok = in ? (dist < delta) : (dist > one_minus_delta);
    if (!ok) {
      report.pass = false;
      report.violations.push_back({w, in, dist});
    }
  };

  classify(FreeWord::empty(m));

  // Breadth-first over step sequences keeps length-then-lex order: parents
  // are visited in order and children are appended in letter order.
  std::vector<std::vector<Step>> frontier{{}};
  for (int l = 1; l <= max_len; ++l) {
    std::vector<std::vector<Step>> next;
    for (const auto& steps : frontier) {
      for (int gen = 0; gen < m; ++gen) {
        for (int dir : {+1, -1}) {
          if (!steps.empty() && steps.back().gen == gen && steps.back().dir == -dir)
            continue;  // would cancel; not reduced
          std::vector<Step> extended = steps;
          extended.push_back({gen, dir});
          classify(steps_to_word(m, extended));
          next.push_back(std::move(extended));
        }
      }
    }
    frontier = std::move(next);
  }
  return report;
}

}  // namespace permstab
