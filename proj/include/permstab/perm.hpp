#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permstab/rational.hpp"

namespace permstab {

/// A permutation of {0, ..., n-1} stored as its one-line image array:
/// images()[x] is where x goes. Immutable after construction.
///
/// Composition convention, fixed globally: compose(p, q) applies q first,
/// (p∘q)(x) = p(q(x)).
class Permutation {
public:
  static Permutation identity(int degree);
  /// Validates that images is a bijection of {0, ..., n-1}.
  static Permutation from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  /// Lexicographic order on image arrays (degrees must match).
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  std::vector<int> images_;

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation direct_sum(std::span<const Permutation>);
  friend Permutation tensor_then_pad(const Permutation&, int, int);
  friend Permutation transposition(int, int, int);
};

Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// The transposition (a b) in degree n.
Permutation transposition(int degree, int a, int b);

/// Normalized Hamming distance: (number of points where p and q disagree)/n.
Rational hamming(const Permutation& p, const Permutation& q);
/// Fraction of fixed points; equals 1 - hamming(p, identity) exactly.
Rational fixed_fraction(const Permutation& p);
/// Squared Hilbert-Schmidt distance of the corresponding 0/1 permutation
/// matrices under the normalized trace; combinatorially 2*(disagreements)/n,
/// so hamming(p, q) == hs_distance_squared(p, q)/2 exactly.
Rational hs_distance_squared(const Permutation& p, const Permutation& q);

/// +1 for even permutations, -1 for odd (parity of degree minus cycle count).
int sign(const Permutation& p);
/// Cycle decomposition including fixed points. Each cycle starts at its
/// smallest element; cycles are ordered by smallest element.
std::vector<std::vector<int>> cycles(const Permutation& p);

/// Block direct sum: block j acts on the index range offset by the sum of
/// the preceding degrees.
Permutation direct_sum(std::span<const Permutation> blocks);
/// Degree n*copies + pad. Point i*copies + s (0 <= s < copies) maps to
/// p(i)*copies + s; the trailing pad points are fixed.
Permutation tensor_then_pad(const Permutation& p, int copies, int pad);

/// An m-tuple of permutations sharing one degree.
class PermTuple {
public:
  PermTuple(std::vector<Permutation> perms);

  int degree() const { return perms_[0].degree(); }
  int rank() const { return static_cast<int>(perms_.size()); }
  const Permutation& operator[](int i) const { return perms_[i]; }
  const std::vector<Permutation>& perms() const { return perms_; }

  bool operator==(const PermTuple& o) const { return perms_ == o.perms_; }
  bool operator!=(const PermTuple& o) const { return !(*this == o); }

private:
  std::vector<Permutation> perms_;
};

/// A bijection of a subset of {0, ..., n-1} onto itself; points outside the
/// support are undefined. Finite analogue of a partial permutation matrix.
class PartialAssignment {
public:
  explicit PartialAssignment(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  bool defined(int x) const { return images_[x] >= 0; }
  int operator()(int x) const;
  void set(int x, int y);

  int support_size() const { return support_size_; }
  std::vector<int> support() const;
  /// True iff the image of the support equals the support (so the map is a
  /// bijection of its support).
  bool is_bijection() const;

private:
  std::vector<int> images_;  // -1 where undefined
  int support_size_ = 0;
};

}  // namespace permstab
