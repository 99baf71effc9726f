#include "forge/rational.hpp"

#include "forge/error.hpp"

#include <cmath>

namespace forge {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw Error(Errc::invalid_argument, "empty number");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw Error(Errc::invalid_argument, std::string(text));
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch < '0' || ch > '9') throw Error(Errc::invalid_argument, "not a number: " + std::string(text));
    value = value * 10 + (ch - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::invalid_argument, "zero denominator in " + std::string(text));
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.empty() || frac.find_first_of("+-") != std::string::npos)
      throw Error(Errc::invalid_argument, "not a number: " + std::string(text));
    bool negative = !digits.empty() && digits[0] == '-';
    BigInt whole = (digits.empty() || digits == "-" || digits == "+") ? BigInt(0) : parse_integer(digits);
    BigInt scale = pow(BigInt(10), frac.size());
    BigInt tail = parse_integer(frac);
    BigInt num = abs(whole) * scale + tail;
    if (negative) num = -num;
    return Rational(num, scale);
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error(Errc::zero_divisor, "negative power of zero");
    Rational inv = Rational(denominator(base), numerator(base));
    return pow(inv, -exponent);
  }
  auto e = static_cast<std::uint64_t>(exponent);
  return Rational(pow(numerator(base), e), pow(denominator(base), e));
}

BigInt floor(const Rational& r) {
  BigInt n = numerator(r);
  BigInt d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt n = numerator(r);
  BigInt d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

int RealPower::compare(const BigInt& m) const {
  if (base < 1) throw Error(Errc::invalid_argument, "RealPower base must be positive");
  if (coeff <= 0) {
    // value is coeff * positive
    if (coeff == 0) return m > 0 ? 1 : (m < 0 ? -1 : 0);
    if (m >= 0) return 1;
    // both negative: compare |m| with |value|
    RealPower flipped{-coeff, base, exponent};
    return -flipped.compare(-m);
  }
  if (m <= 0) return -1;
  // m vs cn/cd * base^(u/v): m^v * cd^v * base^max(0,-u)  vs  cn^v * base^max(0,u)
  BigInt u = numerator(exponent);
  BigInt v = denominator(exponent);
  auto vv = static_cast<std::uint64_t>(v);
  BigInt cn = numerator(coeff);
  BigInt cd = denominator(coeff);
  BigInt lhs = pow(m, vv) * pow(cd, vv);
  BigInt rhs = pow(cn, vv);
  if (u >= 0) {
    rhs *= pow(base, static_cast<std::uint64_t>(u));
  } else {
    lhs *= pow(base, static_cast<std::uint64_t>(-u));
  }
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

BigInt RealPower::floor() const {
  // Largest m with m <= value.
  double guess = approx();
  BigInt m = std::isfinite(guess) && std::fabs(guess) < 1e15 ? BigInt(static_cast<long long>(std::floor(guess)))
                                                            : BigInt(0);
  while (compare(m) > 0) m -= 1;
  BigInt step = 1;
  while (compare(m + step) <= 0) {
    m += step;
    step *= 2;
  }
  // compare(m) <= 0 < compare(m + step); binary search the gap.
  BigInt lo = m;
  BigInt hi = m + step;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (compare(mid) <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool RealPower::is_integer() const { return compare(floor()) == 0; }

BigInt RealPower::ceil() const {
  BigInt f = floor();
  return compare(f) == 0 ? f : BigInt(f + 1);
}

Rational RealPower::integer_equivalent() const {
  if (denominator(exponent) == 1) {
    BigInt u = numerator(exponent);
    if (u >= 0) return coeff * Rational(pow(base, static_cast<std::uint64_t>(u)));
    return coeff / Rational(pow(base, static_cast<std::uint64_t>(-u)));
  }
  BigInt f = floor();
  if (compare(f) == 0) return Rational(f);
  return Rational(f) + Rational(1, 2);
}

double RealPower::approx() const {
  return coeff.convert_to<double>() * std::pow(base.convert_to<double>(), exponent.convert_to<double>());
}

}  // namespace forge
