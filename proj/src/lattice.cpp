#include "permstab/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace permstab {

namespace {

// Floor division for the canonical residue reduction.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Column-style HNF in place. `cols` holds column vectors of length k; on
// success returns the row-major k*k basis, or nullopt if the span has rank
// below k.
std::optional<std::vector<std::int64_t>> hnf_columns(
    int k, std::vector<std::vector<std::int64_t>> cols) {
  // Triangularize: for each row, use column gcd elimination to leave a
  // single positive entry on the diagonal position.
  for (int i = 0; i < k; ++i) {
    // Work on columns j >= i; columns < i are finished.
    while (true) {
      int nonzero = -1;
      int count = 0;
      for (int j = i; j < static_cast<int>(cols.size()); ++j) {
        if (cols[j][i] != 0) {
          ++count;
          if (nonzero < 0 ||
              std::llabs(cols[j][i]) < std::llabs(cols[nonzero][i]))
            nonzero = j;
        }
      }
      if (count == 0) return std::nullopt;  // rank deficient
      std::swap(cols[i], cols[nonzero]);
      if (count == 1) break;
      const std::int64_t pivot = cols[i][i];
      for (int j = i + 1; j < static_cast<int>(cols.size()); ++j) {
        if (cols[j][i] == 0) continue;
        const std::int64_t q = cols[j][i] / pivot;
        for (int row = 0; row < k; ++row) cols[j][row] -= q * cols[i][row];
      }
    }
    if (cols[i][i] < 0)
      for (int row = 0; row < k; ++row) cols[i][row] = -cols[i][row];
  }
  // Reduce below-diagonal entries: for row i ascending, bring each entry in
  // an earlier column into [0, diagonal of row i) by adding multiples of
  // column i. This only touches rows >= i, so finished rows stay put.
  for (int i = 1; i < k; ++i) {
    const std::int64_t d = cols[i][i];
    for (int j = 0; j < i; ++j) {
      const std::int64_t q = floor_div(cols[j][i], d);
      if (q == 0) continue;
      for (int row = i; row < k; ++row) cols[j][row] -= q * cols[i][row];
    }
  }
  std::vector<std::int64_t> basis(static_cast<std::size_t>(k) * k);
  for (int row = 0; row < k; ++row)
    for (int col = 0; col < k; ++col) basis[row * k + col] = cols[col][row];
  return basis;
}

}  // namespace

IntegerLattice IntegerLattice::hnf(
    const std::vector<std::vector<std::int64_t>>& matrix) {
  const int k = static_cast<int>(matrix.size());
  if (k < 1) throw std::invalid_argument("hnf: rank must be >= 1");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("hnf: matrix must be square");
  std::vector<std::vector<std::int64_t>> cols(k, std::vector<std::int64_t>(k));
  for (int row = 0; row < k; ++row)
    for (int col = 0; col < k; ++col) cols[col][row] = matrix[row][col];
  auto basis = hnf_columns(k, std::move(cols));
  if (!basis) throw std::invalid_argument("hnf: singular matrix");
  return IntegerLattice(k, std::move(*basis));
}

IntegerLattice IntegerLattice::diagonal(std::span<const std::int64_t> diag) {
  const int k = static_cast<int>(diag.size());
  if (k < 1) throw std::invalid_argument("diagonal: rank must be >= 1");
  std::vector<std::int64_t> basis(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i) {
    if (diag[i] < 1) throw std::invalid_argument("diagonal: entries must be >= 1");
    basis[i * k + i] = diag[i];
  }
  return IntegerLattice(k, std::move(basis));
}

IntegerLattice IntegerLattice::identity(int rank) {
  std::vector<std::int64_t> diag(rank, 1);
  return diagonal(diag);
}

std::int64_t IntegerLattice::index() const {
  std::int64_t idx = 1;
  for (int i = 0; i < rank_; ++i) idx *= at(i, i);
  return idx;
}

std::vector<std::int64_t> IntegerLattice::reduce(
    std::span<const std::int64_t> v) const {
  if (static_cast<int>(v.size()) != rank_)
    throw std::invalid_argument("reduce: dimension mismatch");
  std::vector<std::int64_t> r(v.begin(), v.end());
  // Columns are lower triangular, so clearing coordinates top-down leaves
  // earlier coordinates untouched.
  for (int i = 0; i < rank_; ++i) {
    const std::int64_t q = floor_div(r[i], at(i, i));
    if (q == 0) continue;
    for (int row = i; row < rank_; ++row) r[row] -= q * at(row, i);
  }
  return r;
}

bool IntegerLattice::contains(std::span<const std::int64_t> v) const {
  for (std::int64_t c : reduce(v))
    if (c != 0) return false;
  return true;
}

std::string IntegerLattice::to_string() const {
  std::string out;
  for (int row = 0; row < rank_; ++row) {
    if (row) out += ';';
    for (int col = 0; col < rank_; ++col) {
      if (col) out += ',';
      out += std::to_string(at(row, col));
    }
  }
  return out;
}

std::int64_t lattice_index(const IntegerLattice& l) { return l.index(); }

std::optional<IntegerLattice> lattice_from_span(
    int rank, std::span<const std::vector<std::int64_t>> vectors) {
  if (rank < 1) throw std::invalid_argument("lattice_from_span: rank must be >= 1");
  std::vector<std::vector<std::int64_t>> cols;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != rank)
      throw std::invalid_argument("lattice_from_span: dimension mismatch");
    if (std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; }))
      continue;
    cols.push_back(v);
  }
  if (static_cast<int>(cols.size()) < rank) return std::nullopt;
  auto basis = hnf_columns(rank, std::move(cols));
  if (!basis) return std::nullopt;
  return IntegerLattice(rank, std::move(*basis));
}

PermTuple coset_action(const IntegerLattice& l) {
  const int k = l.rank();
  const std::int64_t index = l.index();
  if (index > std::numeric_limits<int>::max())
    throw std::invalid_argument("coset_action: lattice index too large");
  const int degree = static_cast<int>(index);

  // Residues are lexicographically ordered, which is exactly the mixed-radix
  // order with radix at(i, i) and coordinate 0 most significant.
  std::vector<std::int64_t> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * l.at(i + 1, i + 1);

  auto label_of = [&](std::span<const std::int64_t> residue) {
    std::int64_t label = 0;
    for (int i = 0; i < k; ++i) label += residue[i] * stride[i];
    return static_cast<int>(label);
  };

  std::vector<Permutation> perms;
  perms.reserve(k);
  std::vector<std::int64_t> residue(k, 0);
  for (int gen = 0; gen < k; ++gen) {
    std::vector<int> images(degree);
    std::fill(residue.begin(), residue.end(), 0);
    for (int label = 0; label < degree; ++label) {
      std::vector<std::int64_t> moved = residue;
      moved[gen] += 1;
      images[label] = label_of(l.reduce(moved));
      // Advance the residue odometer (lex order).
      for (int i = k - 1; i >= 0; --i) {
        if (++residue[i] < l.at(i, i)) break;
        residue[i] = 0;
      }
    }
    perms.push_back(Permutation::from_images(std::move(images)));
  }
  return PermTuple(std::move(perms));
}

std::int64_t basis_vector_order(const IntegerLattice& l, int i) {
  if (i < 0 || i >= l.rank())
    throw std::invalid_argument("basis_vector_order: bad generator index");
  std::vector<std::int64_t> v(l.rank(), 0);
  for (std::int64_t t = 1; t <= l.index(); ++t) {
    v[i] = t;
    if (l.contains(v)) return t;
  }
  throw std::logic_error("basis_vector_order: no order within index bound");
}

}  // namespace permstab
