#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace forge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "7", "-3/4" and exact decimals such as "0.25".
Rational parse_rational(std::string_view text);

/// "num/den" in lowest terms, denominator positive.
std::string to_string(const Rational& r);

BigInt pow(const BigInt& base, std::uint64_t exponent);
Rational pow(const Rational& base, std::int64_t exponent);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

/// The real number coeff * base^exponent with a rational exponent. All
/// comparisons against integers are exact (raise both sides to the
/// exponent's denominator).
struct RealPower {
  Rational coeff{1};
  BigInt base{1};
  Rational exponent{0};

  /// Sign of (m - value).
  int compare(const BigInt& m) const;
  BigInt floor() const;
  BigInt ceil() const;
  /// True when the value is an integer (then floor() is the value).
  bool is_integer() const;
  /// A rational that compares with every integer exactly as the real value
  /// does: the value itself when rational and cheap to obtain, otherwise
  /// floor() + 1/2.
  Rational integer_equivalent() const;
  double approx() const;
};

}  // namespace forge
