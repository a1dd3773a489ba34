#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permstab/lattice.hpp"
#include "permstab/perm.hpp"
#include "permstab/rational.hpp"

namespace permstab {

/// Entrywise direct sum of tuples of equal rank; a glue of solutions is a
/// solution, and defects average by degree.
PermTuple glue(std::span<const PermTuple> parts);

/// Entrywise tensor_then_pad; solutions map to solutions.
PermTuple amplify(const PermTuple& t, int copies, int pad);

/// Amplification to an exact target degree (>= 2n) with an even copy count,
/// so every output generator is even regardless of input parity.
PermTuple amplify_even(const PermTuple& t, int target_degree);

/// Random exact solution of the commutator system: a direct sum of coset
/// actions whose indices tile the degree exactly. Deterministic per seed.
/// Diagonal entries come from a geometric-like distribution capped by the
/// remaining degree; leftovers end as index-1 blocks. If blocks_out is
/// given, it receives the sampled lattices in block order.
PermTuple random_commuting_tuple(int degree, int rank, std::uint64_t seed,
                                 std::vector<IntegerLattice>* blocks_out = nullptr);

/// Composes each generator with ceil(rate*n/2) uniformly random
/// transpositions (pairs sampled without replacement per generator), so
/// every generator moves at most 2*ceil(rate*n/2)/n mass. Deterministic per
/// seed with one substream per generator; the substream does not depend on
/// the rate, so smaller rates draw a prefix of the same transpositions.
PermTuple perturb(const PermTuple& t, const Rational& rate, std::uint64_t seed);

/// Exact solution of bs_system(mexp, nexp) on Z_modulus: a(x) = x + 1 and
/// t(x) = c*x with c = mexp * nexp^-1 (mod modulus). Requires
/// gcd(mexp*nexp, modulus) = 1.
PermTuple bs_exact(int mexp, int nexp, int modulus);

/// Declarative instance description for the CLI.
struct GenSpec {
  enum class Kind { ZkAction, Perturbed, Amplified, BsExact };
  Kind kind = Kind::ZkAction;
  // zk-action / amplified
  std::vector<IntegerLattice> lattices;
  int copies = 1;  // repeat the lattice list this many times
  // perturbed
  int degree = 0;
  int rank = 2;
  Rational rate{0};
  // amplified
  int amp_copies = 1;
  int amp_pad = 0;
  // bs-exact
  int mexp = 0;
  int nexp = 0;
  int modulus = 0;
  std::uint64_t seed = 0;
};

PermTuple generate(const GenSpec& spec);

}  // namespace permstab
