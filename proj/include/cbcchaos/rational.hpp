/*
 * Copyright 2026 The cbc-chaos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbcchaos {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow10(unsigned exponent) { return boost::multiprecision::pow(BigInt(10), exponent); }

/// 10^-exponent as an exact rational.
inline Rational inverse_pow10(unsigned exponent) { return Rational(BigInt(1), pow10(exponent)); }

/// Parses "p/q" or "p" with decimal integers. Floating-point notation is
/// rejected so that ball radii stay exact end to end.
inline Rational parse_fraction(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw std::invalid_argument("malformed fraction '" + std::string(text) +
                                    "' (expected p/q with integers)");
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// "p/q" in lowest terms, or "p" when the value is an integer.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Decimal expansion truncated (not rounded) to `digits` fractional digits.
inline std::string to_decimal_string(const Rational& r, unsigned digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string out;
  if (num < 0) {
    out += '-';
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  out += whole.str();
  if (digits == 0) return out;
  out += '.';
  for (unsigned i = 0; i < digits; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return out;
}

/// Smallest integer c >= 0 with 10^-c <= eps, i.e. ceil(-log10 eps) for
/// 0 < eps <= 1.
inline unsigned ceil_neg_log10(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("radius must be positive");
  unsigned c = 0;
  while (inverse_pow10(c) > eps) ++c;
  return c;
}

}  // namespace cbcchaos
