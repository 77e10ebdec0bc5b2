#include "pmetric/rational.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pmetric {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }
  std::string_view digits = num;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpq_class q;
  q.get_num().set_str(std::string(num), 10);
  if (den.empty()) {
    q.get_den() = 1;
  } else {
    q.get_den().set_str(std::string(den), 10);
    if (q.get_den() == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
  }
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string to_decimal(const Rational& r, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, r.to_double());
  return buf;
}

}  // namespace pmetric
