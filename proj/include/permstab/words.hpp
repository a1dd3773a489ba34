#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permstab/perm.hpp"
#include "permstab/rational.hpp"

namespace permstab {

/// Raised when a requested computation exceeds a hard feasibility cap
/// (word-enumeration cap, oracle enumeration cap). Caps are errors, never
/// silent truncation.
class FeasibilityError : public std::runtime_error {
public:
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// One syllable of a word: generator index and a nonzero exponent.
struct Letter {
  int gen;
  int exp;
  bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
};

/// A freely reduced word over m generators x0, ..., x{m-1}: adjacent letters
/// use distinct generators, no zero exponents. Construction always reduces.
class FreeWord {
public:
  static FreeWord empty(int rank);
  /// Free reduction of a raw letter sequence (merges runs, drops zero
  /// exponents, iterates to a fixpoint).
  static FreeWord reduce(int rank, std::span<const Letter> raw);
  static FreeWord generator(int rank, int gen, int exp = 1);
  /// Text notation: letters `x1`, `x2^-1`, `x1^3`, separated by whitespace;
  /// indices are 1-based in text, 0-based in code.
  static FreeWord parse(int rank, const std::string& text);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_empty() const { return letters_.empty(); }
  /// Word length: sum of |exponent|.
  int length() const;

  FreeWord concat(const FreeWord& o) const;
  FreeWord inverse() const;
  FreeWord power(int e) const;
  /// Exponent sum of each generator (the abelianization image).
  std::vector<std::int64_t> exponent_sums() const;

  std::string to_text() const;
  bool operator==(const FreeWord& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const FreeWord& o) const { return !(*this == o); }

private:
  FreeWord(int rank, std::vector<Letter> letters)
      : rank_(rank), letters_(std::move(letters)) {}

  int rank_;
  std::vector<Letter> letters_;
};

/// Image of a word under the homomorphism sending generator i to t[i];
/// evaluate(u.concat(v), t) == compose(evaluate(u, t), evaluate(v, t)).
Permutation evaluate(const FreeWord& w, const PermTuple& t);

/// How membership in the normal closure of the relators is decided.
/// AbelianCommutator: the closure is the commutator subgroup, membership is
/// "all exponent sums vanish". Trivial: only the empty word and literal
/// powers of listed relators are recognized. None: no oracle; strong checks
/// are rejected.
enum class MembershipKind { AbelianCommutator, Trivial, None };

class RelatorSystem {
public:
  RelatorSystem(int rank, std::vector<FreeWord> relators, MembershipKind kind);

  int rank() const { return rank_; }
  const std::vector<FreeWord>& relators() const { return relators_; }
  MembershipKind kind() const { return kind_; }

  /// Normal-closure membership per kind(); throws if kind() == None.
  bool member(const FreeWord& w) const;

private:
  int rank_;
  std::vector<FreeWord> relators_;
  MembershipKind kind_;
};

/// All commutators [xi, xj], i < j, over k generators; kind AbelianCommutator.
RelatorSystem commutator_system(int k);
/// The single relator x2^-1 x1^mexp x2 x1^-nexp (rank 2, a = x1, t = x2);
/// kind None.
RelatorSystem bs_system(int mexp, int nexp);
/// Membership for AbelianCommutator systems: true iff every generator's
/// exponent sum in w is zero. Throws on any other membership kind.
bool abelian_membership(const FreeWord& w, const RelatorSystem& r);

/// Measured violation of a relator system on a tuple.
struct DefectReport {
  std::vector<Rational> per_relator;
  Rational max_defect;
  /// Points moved by at least one relator evaluation, sorted.
  std::vector<int> defect_points;

  bool is_solution() const { return max_defect.is_zero(); }
  /// Strict by definition: a delta-solution has every relator within
  /// distance < delta of the identity.
  bool is_delta_solution(const Rational& delta) const { return max_defect < delta; }
};

DefectReport defect(const PermTuple& t, const RelatorSystem& r);

struct StrongViolation {
  FreeWord word;
  bool in_closure;
  Rational distance;
};

struct StrongCheckReport {
  bool pass = true;
  Rational delta;
  /// Largest word length enumerated (all lengths < 1/delta).
  int max_length = 0;
  std::int64_t words_checked = 0;
  /// Violating words in length-then-lexicographic order.
  std::vector<StrongViolation> violations;
};

/// Checks the delta-strong-solution dichotomy over every reduced word of
/// length < 1/delta: in-closure words must land within distance < delta of
/// the identity, out-of-closure words at distance > 1 - delta. Requires a
/// membership-capable system. Enumeration is capped (default 50,000 words);
/// exceeding the cap is a FeasibilityError, never a silent truncation.
StrongCheckReport strong_solution_check(const PermTuple& t, const RelatorSystem& r,
                                        const Rational& delta,
                                        std::int64_t word_cap = 50000);

}  // namespace permstab
