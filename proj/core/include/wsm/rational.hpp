#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wsm {

/// Exact arbitrary-precision rational number, always kept in lowest terms
/// with a positive denominator.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by design of the arithmetic
  Rational(const Integer& numerator, const Integer& denominator);

  /// Parses "p", "-p", "p/q". Rejects decimals, empty strings, zero denominators.
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  std::size_t hash() const;

 private:
  explicit Rational(boost::multiprecision::cpp_rational value) : value_(std::move(value)) {}

  boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational abs(const Rational& q);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace wsm

template <>
struct std::hash<wsm::Rational> {
  std::size_t operator()(const wsm::Rational& q) const noexcept { return q.hash(); }
};
