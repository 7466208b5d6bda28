#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loctile {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a finite decimal such as "0.125".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Exact test of count < r * total, without overflow for 64-bit operands.
inline bool less_than_fraction(std::int64_t count, const Rational& r, std::int64_t total) {
  return static_cast<__int128>(count) * r.denominator() <
         static_cast<__int128>(r.numerator()) * total;
}

/// Exact test of count > r * total.
inline bool greater_than_fraction(std::int64_t count, const Rational& r, std::int64_t total) {
  return static_cast<__int128>(count) * r.denominator() >
         static_cast<__int128>(r.numerator()) * total;
}

/// floor(r * n).
inline std::int64_t floor_times(const Rational& r, std::int64_t n) {
  const __int128 num = static_cast<__int128>(r.numerator()) * n;
  __int128 q = num / r.denominator();
  if (num % r.denominator() != 0 && num < 0) --q;
  return static_cast<std::int64_t>(q);
}

}  // namespace loctile
