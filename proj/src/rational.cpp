#include "lembed/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lembed {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed rational literal '" + std::string(text) + "'"); };
  std::size_t i = 0;
  std::string num;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') num.push_back('-');
    ++i;
  }
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num.push_back(text[i++]);
    ++digits;
  }
  if (digits == 0) throw fail();
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den.clear();
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den.push_back(text[i++]);
    if (den.empty()) throw fail();
  }
  if (i != text.size()) throw fail();
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("rational literal '" + std::string(text) + "' has zero denominator");
  return Rational(mpq_class(n, d));
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double has no rational value");
  return Rational(mpq_class(v));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lembed

std::size_t std::hash<lembed::Rational>::operator()(const lembed::Rational& r) const noexcept {
  return std::hash<std::string>{}(r.str());
}
