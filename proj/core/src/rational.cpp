#include "wsm/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

#include "wsm/error.hpp"

namespace wsm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw Error("bad-fraction", "zero denominator");
  value_ = boost::multiprecision::cpp_rational(numerator, denominator);
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw Error("bad-fraction", "not an exact fraction: '" + std::string(text) + "'");
  }
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) throw Error("bad-fraction", "zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

int Rational::sign() const { return value_.sign(); }

bool Rational::is_integer() const { return denominator() == 1; }

std::string Rational::str() const {
  const Integer den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

Rational Rational::operator-() const { return Rational(boost::multiprecision::cpp_rational(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error("division-by-zero", "rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const int c = lhs.value_.compare(rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace wsm
