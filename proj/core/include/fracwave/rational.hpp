#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracwave::symexpr {

/// Exact rational number with arbitrary-precision numerator and denominator.
/// The denominator is always positive and the fraction is kept in lowest terms.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);

  /// Exact value of a finite double (every finite double is a dyadic rational).
  static Rational from_double(double value);
  /// Exact value of a decimal literal such as "12", "0.125" or "2.5e-3".
  static Rational from_decimal(std::string_view text);

  Integer numerator() const { return boost::multiprecision::numerator(value_); }
  Integer denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return denominator() == 1; }
  bool is_negative() const { return value_ < 0; }
  int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

  double to_double() const;
  /// Value as a 64-bit integer when it is an integer in range.
  std::optional<std::int64_t> to_int64() const;

  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const;
  /// Splits |x| = s^2 * rest with s as large as trial division up to `limit`
  /// can find; returns s. Zero maps to one.
  Rational square_content(unsigned limit = 1000) const;

  Rational pow(std::int64_t exponent) const;
  Rational abs() const { return value_ < 0 ? Rational(-value_) : *this; }

  std::string str() const;

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_{0};
};

}  // namespace fracwave::symexpr
