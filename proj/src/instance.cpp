#include "permstab/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "permstab/rng.hpp"

namespace permstab {

namespace {

// Substream tags so the different generators never share draws.
constexpr std::uint64_t kTagLattice = 0x6C617474;   // "latt"
constexpr std::uint64_t kTagPerturb = 0x70657274;   // "pert"

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Geometric-like block dimension: 1 + number of consecutive heads, capped.
std::int64_t geometric_dim(SplitRng& rng, std::int64_t cap) {
  std::int64_t d = 1;
  while (d < cap && rng.next_bool()) ++d;
  return d;
}

}  // namespace

PermTuple glue(std::span<const PermTuple> parts) {
  if (parts.empty()) throw std::invalid_argument("glue: empty list");
  const int rank = parts[0].rank();
  for (const PermTuple& p : parts)
    if (p.rank() != rank) throw std::invalid_argument("glue: rank mismatch");
  std::vector<Permutation> perms;
  perms.reserve(rank);
  for (int g = 0; g < rank; ++g) {
    std::vector<Permutation> blocks;
    blocks.reserve(parts.size());
    for (const PermTuple& p : parts) blocks.push_back(p[g]);
    perms.push_back(direct_sum(blocks));
  }
  return PermTuple(std::move(perms));
}

PermTuple amplify(const PermTuple& t, int copies, int pad) {
  std::vector<Permutation> perms;
  perms.reserve(t.rank());
  for (int g = 0; g < t.rank(); ++g)
    perms.push_back(tensor_then_pad(t[g], copies, pad));
  return PermTuple(std::move(perms));
}

PermTuple amplify_even(const PermTuple& t, int target_degree) {
  const int n = t.degree();
  if (target_degree < 2 * n)
    throw std::invalid_argument("amplify_even: target must be >= 2 * degree");
  const int copies = 2 * (target_degree / (2 * n));
  const int pad = target_degree - copies * n;
  return amplify(t, copies, pad);
}

PermTuple random_commuting_tuple(int degree, int rank, std::uint64_t seed,
                                 std::vector<IntegerLattice>* blocks_out) {
  if (degree < 1) throw std::invalid_argument("random_commuting_tuple: degree must be >= 1");
  if (rank < 1) throw std::invalid_argument("random_commuting_tuple: rank must be >= 1");
  SplitRng rng = SplitRng(seed).split(kTagLattice);

  std::vector<PermTuple> parts;
  std::vector<IntegerLattice> blocks;
  std::int64_t remaining = degree;
  while (remaining > 0) {
    // Draw a lower-triangular HNF basis whose index cannot exceed what is
    // left to tile.
    std::vector<std::int64_t> diag(rank);
    std::int64_t cap = remaining;
    for (int i = 0; i < rank; ++i) {
      diag[i] = geometric_dim(rng, cap);
      cap /= diag[i];
    }
    std::vector<std::vector<std::int64_t>> basis(
        rank, std::vector<std::int64_t>(rank, 0));
    for (int i = 0; i < rank; ++i) {
      basis[i][i] = diag[i];
      for (int j = 0; j < i; ++j)
        basis[i][j] = static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(diag[i])));
    }
    IntegerLattice lattice = IntegerLattice::hnf(basis);
    remaining -= lattice.index();
    parts.push_back(coset_action(lattice));
    blocks.push_back(std::move(lattice));
  }
  if (blocks_out) *blocks_out = std::move(blocks);
  return glue(parts);
}

PermTuple perturb(const PermTuple& t, const Rational& rate, std::uint64_t seed) {
  if (rate < Rational(0) || Rational(1) <= rate)
    throw std::invalid_argument("perturb: rate must be in [0, 1)");
  const int n = t.degree();
  // ceil(rate * n / 2) in exact arithmetic.
  const std::int64_t num = rate.num() * static_cast<std::int64_t>(n);
  const std::int64_t den = rate.den() * 2;
  const std::int64_t count = (num + den - 1) / den;
  if (count == 0) return t;
  if (n < 2)
    throw std::invalid_argument("perturb: degree too small for transpositions");

  std::vector<Permutation> perms;
  perms.reserve(t.rank());
  for (int g = 0; g < t.rank(); ++g) {
    SplitRng rng = SplitRng(seed).split(kTagPerturb).split(static_cast<std::uint64_t>(g));
    std::set<std::pair<int, int>> used;
    std::vector<int> images = t[g].images();
    std::int64_t placed = 0;
    while (placed < count) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!used.insert({a, b}).second) continue;  // without replacement
      // Left-compose with (a b): swap the two image values.
      for (int x = 0; x < n; ++x) {
        if (images[x] == a)
          images[x] = b;
        else if (images[x] == b)
          images[x] = a;
      }
      ++placed;
      if (placed >= static_cast<std::int64_t>(n) * (n - 1) / 2 && placed < count)
        throw std::invalid_argument("perturb: not enough distinct pairs");
    }
    perms.push_back(Permutation::from_images(std::move(images)));
  }
  return PermTuple(std::move(perms));
}

PermTuple bs_exact(int mexp, int nexp, int modulus) {
  if (mexp == 0 || nexp == 0)
    throw std::invalid_argument("bs_exact: exponents must be nonzero");
  if (modulus < 1) throw std::invalid_argument("bs_exact: modulus must be >= 1");
  const std::int64_t product =
      static_cast<std::int64_t>(mexp) * static_cast<std::int64_t>(nexp);
  if (gcd64(product, modulus) != 1)
    throw std::invalid_argument("bs_exact: modulus must be coprime to mexp*nexp");

  auto mod = [&](std::int64_t v) {
    std::int64_t r = v % modulus;
    return r < 0 ? r + modulus : r;
  };
  // nexp^-1 (mod modulus) by extended Euclid.
  std::int64_t a = mod(nexp), b = modulus, x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t tmp = a - q * b;
    a = b;
    b = tmp;
    tmp = x0 - q * x1;
    x0 = x1;
    x1 = tmp;
  }
  const std::int64_t inv_n = mod(x0);
  const std::int64_t c = mod(mod(mexp) * inv_n);

  std::vector<int> shift(modulus), mult(modulus);
  for (int x = 0; x < modulus; ++x) {
    shift[x] = static_cast<int>(mod(x + 1));
    mult[x] = static_cast<int>(mod(c * x));
  }
  return PermTuple({Permutation::from_images(std::move(shift)),
                    Permutation::from_images(std::move(mult))});
}

PermTuple generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenSpec::Kind::ZkAction:
    case GenSpec::Kind::Amplified: {
      if (spec.lattices.empty())
        throw std::invalid_argument("generate: zk-action needs lattices");
      if (spec.copies < 1)
        throw std::invalid_argument("generate: copies must be >= 1");
      std::vector<PermTuple> parts;
      for (int c = 0; c < spec.copies; ++c)
        for (const IntegerLattice& l : spec.lattices)
          parts.push_back(coset_action(l));
      PermTuple base = glue(parts);
      if (spec.kind == GenSpec::Kind::Amplified)
        return amplify(base, spec.amp_copies, spec.amp_pad);
      return base;
    }
    case GenSpec::Kind::Perturbed: {
      PermTuple base = random_commuting_tuple(spec.degree, spec.rank, spec.seed);
      return perturb(base, spec.rate, spec.seed);
    }
    case GenSpec::Kind::BsExact:
      return bs_exact(spec.mexp, spec.nexp, spec.modulus);
  }
  throw std::logic_error("generate: bad kind");
}

}  // namespace permstab
