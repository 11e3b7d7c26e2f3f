#ifndef PBPSAMP_RATIONAL_HPP
#define PBPSAMP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pbpsamp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Formats a rational as "p/q" ("p" when q = 1). Exact, canonical.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on
/// malformed input (including q = 0).
inline Rational parse_fraction(const std::string& text) {
  const auto bad = [&]() {
    return std::invalid_argument("malformed rational: \"" + text + "\"");
  };
  if (text.empty()) throw bad();
  const std::size_t slash = text.find('/');
  const auto parse_int = [&](const std::string& s) -> BigInt {
    if (s.empty()) throw bad();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw bad();
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad();
    }
    return BigInt(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw bad();
  return Rational(num, den);
}

/// Decimal approximation to `digits` places, for display columns only.
inline std::string to_decimal_string(const Rational& r, int digits = 6) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // Round half up on the scaled integer.
  const BigInt scaled = (num * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string fs = frac.str();
  fs.insert(fs.begin(), static_cast<std::size_t>(digits) - fs.size(), '0');
  return sign + whole.str() + "." + fs;
}

/// Exact probability with a power-of-alphabet denominator: value = num / d^exp.
///
/// This is the natural output of counting over [d]^k, so all probability
/// computations in the project stay exact; floating point appears only in
/// display columns.
class DyadicProb {
 public:
  DyadicProb() : num_(0), exp_(0), base_(2) {}

  DyadicProb(BigInt numerator, std::uint32_t exponent, std::uint32_t base)
      : num_(std::move(numerator)), exp_(exponent), base_(base) {
    if (base_ < 2) throw std::invalid_argument("DyadicProb: base must be >= 2");
    if (num_ < 0) throw std::invalid_argument("DyadicProb: negative numerator");
    normalize();
    if (num_ > pow_base(exp_)) throw std::invalid_argument("DyadicProb: value > 1");
  }

  static DyadicProb zero(std::uint32_t base) { return DyadicProb(0, 0, base); }
  static DyadicProb one(std::uint32_t base) { return DyadicProb(1, 0, base); }

  const BigInt& numerator() const { return num_; }
  std::uint32_t exponent() const { return exp_; }
  std::uint32_t base() const { return base_; }

  Rational to_rational() const { return Rational(num_, pow_base(exp_)); }

  bool operator==(const DyadicProb& o) const {
    // Canonical after normalization when bases agree; fall back to rationals
    // across bases.
    if (base_ == o.base_) return num_ == o.num_ && exp_ == o.exp_;
    return to_rational() == o.to_rational();
  }
  bool operator!=(const DyadicProb& o) const { return !(*this == o); }

  std::string str() const { return to_fraction_string(to_rational()); }

 private:
  BigInt pow_base(std::uint32_t e) const {
    BigInt p = 1;
    for (std::uint32_t i = 0; i < e; ++i) p *= base_;
    return p;
  }

  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && num_ % base_ == 0) {
      num_ /= base_;
      --exp_;
    }
  }

  BigInt num_;
  std::uint32_t exp_;
  std::uint32_t base_;
};

}  // namespace pbpsamp

#endif  // PBPSAMP_RATIONAL_HPP
