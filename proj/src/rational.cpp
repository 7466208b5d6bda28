#include "loctile/rational.hpp"

#include <cctype>

namespace loctile {

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw std::invalid_argument("not a rational: '" + whole + "'");
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a rational: '" + whole + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return {num, den};
  }
  const auto e = text.find_first_of("eE");
  std::string mantissa = text.substr(0, e);
  std::int64_t exponent = e == std::string::npos ? 0 : parse_int(text.substr(e + 1), text);
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  bool seen_point = false;
  for (char ch : mantissa) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (seen_point) --exponent;
    } else {
      throw std::invalid_argument("not a rational: '" + text + "'");
    }
  }
  if (digits.empty() || exponent < -18 || exponent > 18) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  while (digits.size() > 1 && digits[0] == '0') digits.erase(0, 1);
  if (digits.size() > 18) throw std::invalid_argument("too many digits: '" + text + "'");
  std::int64_t num = std::stoll(digits);
  std::int64_t scale = 1;
  for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  return negative ? -r : r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace loctile
