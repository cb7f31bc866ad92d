#include "fracwave/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "fracwave/error.hpp"

namespace fracwave::symexpr {

namespace {

using Integer = Rational::Integer;

Integer pow10(unsigned n) {
  Integer r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

std::optional<Integer> exact_isqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer root = boost::multiprecision::sqrt(n);
  if (root * root != n) return std::nullopt;
  return root;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    value_ = boost::multiprecision::cpp_rational(Integer(-num), Integer(-den));
  } else {
    value_ = boost::multiprecision::cpp_rational(num, den);
  }
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot represent non-finite double exactly");
  if (value == 0.0) return Rational();
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num = scaled;
  Integer den = 1;
  if (exponent > 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

Rational Rational::from_decimal(std::string_view text) {
  std::size_t i = 0;
  Integer digits = 0;
  unsigned frac_digits = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits = digits * 10 + (text[i] - '0');
    ++i;
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits = digits * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
      any = true;
    }
  }
  if (!any) throw InvalidArgument("malformed decimal literal '" + std::string(text) + "'");
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) throw InvalidArgument("malformed exponent in '" + std::string(text) + "'");
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exp10 = exp10 * 10 + (text[i] - '0');
      if (exp10 > 4000) throw InvalidArgument("decimal exponent out of range");
      ++i;
    }
    if (neg) exp10 = -exp10;
  }
  if (i != text.size()) throw InvalidArgument("malformed decimal literal '" + std::string(text) + "'");
  exp10 -= static_cast<long>(frac_digits);
  if (exp10 >= 0) return Rational(digits * pow10(static_cast<unsigned>(exp10)), 1);
  return Rational(digits, pow10(static_cast<unsigned>(-exp10)));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::optional<std::int64_t> Rational::to_int64() const {
  if (!is_integer()) return std::nullopt;
  const Integer n = numerator();
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return n.convert_to<std::int64_t>();
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (is_negative()) return std::nullopt;
  auto n = exact_isqrt(numerator());
  auto d = exact_isqrt(denominator());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

Rational Rational::square_content(unsigned limit) const {
  auto content = [limit](Integer n) {
    if (n < 0) n = -n;
    Integer s = 1;
    if (n == 0) return s;
    for (unsigned f = 2; f <= limit; ++f) {
      const Integer sq = Integer(f) * f;
      if (sq > n) break;
      while (n % sq == 0) {
        n /= sq;
        s *= f;
      }
    }
    if (auto r = exact_isqrt(n)) s *= *r;
    return s;
  };
  return Rational(content(numerator()), content(denominator()));
}

Rational Rational::pow(std::int64_t exponent) const {
  if (exponent == 0) return Rational(1);
  if (is_zero()) {
    if (exponent < 0) throw DomainError("zero raised to a negative power");
    return Rational();
  }
  const bool invert = exponent < 0;
  std::uint64_t e = invert ? static_cast<std::uint64_t>(-(exponent + 1)) + 1 : static_cast<std::uint64_t>(exponent);
  if (e > 100000) throw DomainError("exponent too large for exact arithmetic");
  const auto n = static_cast<unsigned>(e);
  Integer num = boost::multiprecision::pow(numerator(), n);
  Integer den = boost::multiprecision::pow(denominator(), n);
  return invert ? Rational(den, num) : Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

}  // namespace fracwave::symexpr
