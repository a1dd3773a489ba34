#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace permstab {

/// Exact rational number. All distances and fractions in this library are
/// counts over a permutation degree, so int64 components with gcd
/// normalization are plenty; comparisons and arithmetic go through 128-bit
/// intermediates to stay overflow-safe.
class Rational {
public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  /// Rendered as "num/den" with the denominator always present ("0/1", "2/3").
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  /// Accepts "a/b", plain integers, and decimal literals like "0.001"
  /// (converted exactly, e.g. 1/1000).
  static Rational parse(const std::string& text);

private:
  std::int64_t num_;
  std::int64_t den_;  // > 0, gcd(num_, den_) == 1
};

}  // namespace permstab
