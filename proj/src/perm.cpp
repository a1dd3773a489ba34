#include "permstab/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permstab {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = gcd64(num, den);
  num_ = (g == 0) ? 0 : num / g;
  den_ = (g == 0) ? 1 : den / g;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  const __int128 n =
      static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  const __int128 d = static_cast<__int128>(den_) * o.den_;
  // Reduce in 128 bits before narrowing.
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(n / a), static_cast<std::int64_t>(d / a));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first so the products fit comfortably.
  const std::int64_t g1 = gcd64(num_, o.den_);
  const std::int64_t g2 = gcd64(o.num_, den_);
  const std::int64_t a = g1 ? num_ / g1 : 0;
  const std::int64_t b = g2 ? den_ / g2 : 1;
  const std::int64_t c = g2 ? o.num_ / g2 : 0;
  const std::int64_t d = g1 ? o.den_ / g1 : 1;
  return Rational(a * c, b * d);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t n = std::stoll(text.substr(0, slash));
    const std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    if (tail.empty()) return Rational(std::stoll(head));
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tail[i])))
        throw std::invalid_argument("Rational: bad decimal " + text);
      scale *= 10;
    }
    const bool neg = !head.empty() && head[0] == '-';
    const std::int64_t whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    const std::int64_t frac = std::stoll(tail);
    const std::int64_t mag = (whole < 0 ? -whole : whole) * scale + frac;
    return Rational(neg ? -mag : mag, scale);
  }
  return Rational(std::stoll(text));
}

Permutation Permutation::identity(int degree) {
  if (degree < 1) throw std::invalid_argument("Permutation: degree must be >= 1");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1) throw std::invalid_argument("Permutation: degree must be >= 1");
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    const int y = images[x];
    if (y < 0 || y >= n || seen[y])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[y] = 1;
  }
  return Permutation(std::move(images), Unchecked{});
}

bool Permutation::is_identity() const {
  for (int x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> images(p.degree());
  for (int x = 0; x < p.degree(); ++x) images[x] = p.images_[q.images_[x]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<int> images(p.degree());
  for (int x = 0; x < p.degree(); ++x) images[p.images_[x]] = x;
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation transposition(int degree, int a, int b) {
  if (a < 0 || b < 0 || a >= degree || b >= degree || a == b)
    throw std::invalid_argument("transposition: bad points");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::swap(images[a], images[b]);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Rational hamming(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("hamming: degree mismatch");
  std::int64_t moved = 0;
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) != q(x)) ++moved;
  return Rational(moved, p.degree());
}

Rational fixed_fraction(const Permutation& p) {
  std::int64_t fixed = 0;
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) == x) ++fixed;
  return Rational(fixed, p.degree());
}

Rational hs_distance_squared(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("hs_distance_squared: degree mismatch");
  std::int64_t moved = 0;
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) != q(x)) ++moved;
  return Rational(2 * moved, p.degree());
}

int sign(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  int cycle_count = 0;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ++cycle_count;
    for (int y = x; !seen[y]; y = p(y)) seen[y] = 1;
  }
  return ((n - cycle_count) % 2 == 0) ? 1 : -1;
}

std::vector<std::vector<int>> cycles(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> result;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> cycle;
    for (int y = x; !seen[y]; y = p(y)) {
      seen[y] = 1;
      cycle.push_back(y);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

Permutation direct_sum(std::span<const Permutation> blocks) {
  if (blocks.empty()) throw std::invalid_argument("direct_sum: empty list");
  std::int64_t total = 0;
  for (const auto& b : blocks) total += b.degree();
  if (total > std::numeric_limits<int>::max())
    throw std::invalid_argument("direct_sum: degree overflow");
  std::vector<int> images(static_cast<std::size_t>(total));
  int offset = 0;
  for (const auto& b : blocks) {
    for (int x = 0; x < b.degree(); ++x) images[offset + x] = offset + b(x);
    offset += b.degree();
  }
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation tensor_then_pad(const Permutation& p, int copies, int pad) {
  if (copies < 1) throw std::invalid_argument("tensor_then_pad: copies must be >= 1");
  if (pad < 0) throw std::invalid_argument("tensor_then_pad: pad must be >= 0");
  const std::int64_t total =
      static_cast<std::int64_t>(p.degree()) * copies + pad;
  if (total > std::numeric_limits<int>::max())
    throw std::invalid_argument("tensor_then_pad: degree overflow");
  std::vector<int> images(static_cast<std::size_t>(total));
  for (int i = 0; i < p.degree(); ++i)
    for (int s = 0; s < copies; ++s) images[i * copies + s] = p(i) * copies + s;
  for (std::int64_t x = static_cast<std::int64_t>(p.degree()) * copies; x < total; ++x)
    images[x] = static_cast<int>(x);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

PermTuple::PermTuple(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  if (perms_.empty()) throw std::invalid_argument("PermTuple: rank must be >= 1");
  for (const auto& p : perms_)
    if (p.degree() != perms_[0].degree())
      throw std::invalid_argument("PermTuple: mixed degrees");
}

PartialAssignment::PartialAssignment(int degree) : images_(degree, -1) {
  if (degree < 1) throw std::invalid_argument("PartialAssignment: degree must be >= 1");
}

int PartialAssignment::operator()(int x) const {
  if (images_[x] < 0)
    throw std::invalid_argument("PartialAssignment: point not in support");
  return images_[x];
}

void PartialAssignment::set(int x, int y) {
  if (x < 0 || y < 0 || x >= degree() || y >= degree())
    throw std::invalid_argument("PartialAssignment: point out of range");
  if (images_[x] < 0) ++support_size_;
  images_[x] = y;
}

std::vector<int> PartialAssignment::support() const {
  std::vector<int> s;
  s.reserve(support_size_);
  for (int x = 0; x < degree(); ++x)
    if (images_[x] >= 0) s.push_back(x);
  return s;
}

bool PartialAssignment::is_bijection() const {
  std::vector<char> hit(degree(), 0);
  int images_in_support = 0;
  for (int x = 0; x < degree(); ++x) {
    const int y = images_[x];
    if (y < 0) continue;
    if (images_[y] < 0 || hit[y]) return false;
    hit[y] = 1;
    ++images_in_support;
  }
  return images_in_support == support_size_;
}

}  // namespace permstab
