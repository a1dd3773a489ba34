#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permstab/perm.hpp"

namespace permstab {

/// A finite-index sublattice of Z^k held in column-style Hermite normal
/// form: the basis matrix is lower triangular with positive diagonal, and
/// each below-diagonal entry lies in [0, d) for the diagonal entry d of its
/// row. Two bases with the same column span normalize to the same object.
class IntegerLattice {
public:
  /// HNF of the column span of a k-by-k integer matrix (rows outer, columns
  /// inner). Throws on singular input.
  static IntegerLattice hnf(const std::vector<std::vector<std::int64_t>>& matrix);
  static IntegerLattice diagonal(std::span<const std::int64_t> diag);
  static IntegerLattice identity(int rank);

  int rank() const { return rank_; }
  std::int64_t at(int row, int col) const { return basis_[row * rank_ + col]; }
  /// Lattice index in Z^k: the product of the diagonal entries.
  std::int64_t index() const;

  /// Canonical residue of v modulo the lattice: the unique representative
  /// with 0 <= r[i] < at(i, i) for every i.
  std::vector<std::int64_t> reduce(std::span<const std::int64_t> v) const;
  bool contains(std::span<const std::int64_t> v) const;

  bool operator==(const IntegerLattice& o) const {
    return rank_ == o.rank_ && basis_ == o.basis_;
  }
  bool operator!=(const IntegerLattice& o) const { return !(*this == o); }

  /// "a,b;c,d" row by row.
  std::string to_string() const;

private:
  IntegerLattice(int rank, std::vector<std::int64_t> basis)
      : rank_(rank), basis_(std::move(basis)) {}

  int rank_;
  std::vector<std::int64_t> basis_;  // row-major k*k

  friend std::optional<IntegerLattice> lattice_from_span(
      int rank, std::span<const std::vector<std::int64_t>> vectors);
};

std::int64_t lattice_index(const IntegerLattice& l);

/// HNF of the integer span of an arbitrary collection of vectors in Z^k;
/// nullopt when the span has rank below k.
std::optional<IntegerLattice> lattice_from_span(
    int rank, std::span<const std::vector<std::int64_t>> vectors);

/// The translation action of Z^k on Z^k/L: a commuting tuple of rank k and
/// degree index(L). Generator i adds the i-th standard basis vector to the
/// coset label; cosets are canonical residues ordered lexicographically.
PermTuple coset_action(const IntegerLattice& l);

/// Smallest t > 0 with t*e_i in the lattice (the cycle length of generator i
/// in the coset action).
std::int64_t basis_vector_order(const IntegerLattice& l, int i);

}  // namespace permstab
