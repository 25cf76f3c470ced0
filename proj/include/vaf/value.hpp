#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "vaf/error.hpp"

namespace vaf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// Path multiplicities. Unbounded: the number of paths grows like |Q|^|w|.
using Count = BigInt;

enum class Carrier { nat, integer, rational };

inline std::string_view to_string(Carrier c) {
  switch (c) {
    case Carrier::nat: return "nat";
    case Carrier::integer: return "int";
    case Carrier::rational: return "rat";
  }
  return "?";
}

inline Carrier carrier_from_string(std::string_view s) {
  if (s == "nat") return Carrier::nat;
  if (s == "int") return Carrier::integer;
  if (s == "rat") return Carrier::rational;
  throw Error("unknown carrier '" + std::string(s) + "'");
}

/// Exact scalar tagged with its carrier. Rationals are kept canonical by
/// Boost (lowest terms, positive denominator); nat and int values always
/// have denominator 1, and nat values are never negative.
class Value {
 public:
  Value() = default;

  Value(Carrier carrier, Rational magnitude) : carrier_(carrier), magnitude_(std::move(magnitude)) {
    if (carrier_ != Carrier::rational && denominator(magnitude_) != 1)
      throw Error("value " + magnitude_.str() + " is not an integer in carrier " + std::string(to_string(carrier_)));
    if (carrier_ == Carrier::nat && magnitude_ < 0)
      throw Error("value " + magnitude_.str() + " is negative in carrier nat");
  }

  Value(Carrier carrier, std::int64_t v) : Value(carrier, Rational(v)) {}

  static Value nat(BigInt v) { return Value(Carrier::nat, Rational(std::move(v))); }
  static Value integer(BigInt v) { return Value(Carrier::integer, Rational(std::move(v))); }
  static Value rational(BigInt p, BigInt q) {
    if (q == 0) throw Error("zero denominator");
    return Value(Carrier::rational, Rational(std::move(p), std::move(q)));
  }

  Carrier carrier() const noexcept { return carrier_; }
  const Rational& magnitude() const noexcept { return magnitude_; }
  bool is_zero() const { return magnitude_ == 0; }
  bool is_integral() const { return denominator(magnitude_) == 1; }

  /// Integral part; only meaningful when is_integral().
  BigInt as_integer() const { return numerator(magnitude_); }

  /// Same magnitude, different carrier. Throws when it does not fit.
  Value recarried(Carrier c) const { return Value(c, magnitude_); }

  std::string str() const {
    if (denominator(magnitude_) == 1) return numerator(magnitude_).str();
    return numerator(magnitude_).str() + "/" + denominator(magnitude_).str();
  }

  /// Parses `-12`, `7`, or `p/q`. Non-reduced fractions are normalized.
  static Value parse(std::string_view text, Carrier carrier) {
    auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
      std::size_t i = 0;
      bool neg = false;
      if (allow_sign && !s.empty() && s[0] == '-') {
        neg = true;
        i = 1;
      }
      if (i == s.size()) throw Error("malformed number '" + std::string(text) + "'");
      BigInt r = 0;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw Error("malformed number '" + std::string(text) + "'");
        r = r * 10 + (s[i] - '0');
      }
      return neg ? BigInt(-r) : r;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Value(carrier, Rational(parse_int(text, true)));
    BigInt p = parse_int(text.substr(0, slash), true);
    BigInt q = parse_int(text.substr(slash + 1), false);
    if (q == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Value(carrier, Rational(p, q));
  }

  friend bool operator==(const Value& a, const Value& b) {
    return a.carrier_ == b.carrier_ && a.magnitude_ == b.magnitude_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.carrier_ <=> b.carrier_; c != 0) return c;
    if (a.magnitude_ < b.magnitude_) return std::strong_ordering::less;
    if (b.magnitude_ < a.magnitude_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Carrier carrier_ = Carrier::nat;
  Rational magnitude_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace vaf
