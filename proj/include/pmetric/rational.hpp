#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pmetric {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
  Rational() = default;
  Rational(long value) : value_(value) {}
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "-p" or "p/q" (q > 0 after sign normalisation).
  /// Throws std::invalid_argument on anything else, including q == 0.
  static Rational parse(std::string_view text);

  /// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  std::string numerator_str() const { return value_.get_num().get_str(); }
  std::string denominator_str() const { return value_.get_den().get_str(); }
  bool is_integer() const { return value_.get_den() == 1; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  const mpq_class& raw() const { return value_; }
  mpq_class& raw() { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Decimal rendering with `digits` significant digits, for annotations only.
std::string to_decimal(const Rational& r, int digits = 12);

}  // namespace pmetric
