#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vaf/value.hpp"

namespace vaf {

/// Binary operations a structure may offer. All four are commutative and
/// associative on nat, int and rat, so any of them can serve as aggregate.
enum class Op { plus, times, min, max };

inline constexpr std::array<Op, 4> kAllOps{Op::plus, Op::times, Op::min, Op::max};

inline std::string_view to_string(Op op) {
  switch (op) {
    case Op::plus: return "plus";
    case Op::times: return "times";
    case Op::min: return "min";
    case Op::max: return "max";
  }
  return "?";
}

inline std::optional<Op> op_from_string(std::string_view s) {
  for (Op op : kAllOps)
    if (to_string(op) == s) return op;
  return std::nullopt;
}

/// A carrier, the binary operations it offers, and the distinguished
/// aggregate used to combine the values of all surviving runs.
class AlgebraicStructure {
 public:
  AlgebraicStructure(Carrier carrier, Op aggregate) : AlgebraicStructure(carrier, aggregate, kAllOps) {}

  AlgebraicStructure(Carrier carrier, Op aggregate, std::span<const Op> ops) : carrier_(carrier), aggregate_(aggregate) {
    for (Op op : ops) mask_ |= bit(op);
    if (!has(aggregate_))
      throw Error("aggregate '" + std::string(to_string(aggregate_)) + "' is not an operation of the structure");
  }

  Carrier carrier() const noexcept { return carrier_; }
  Op aggregate_op() const noexcept { return aggregate_; }
  bool has(Op op) const noexcept { return (mask_ & bit(op)) != 0; }

  /// Identity of plus.
  Value zero() const { return Value(carrier_, 0); }
  /// Identity of times.
  Value one() const {
    if (!has(Op::times)) throw Error("structure has no times operation");
    return Value(carrier_, 1);
  }

  /// Same operations and aggregate over another carrier.
  AlgebraicStructure with_carrier(Carrier c) const {
    AlgebraicStructure s = *this;
    s.carrier_ = c;
    return s;
  }
  AlgebraicStructure with_aggregate(Op agg) const {
    AlgebraicStructure s = *this;
    s.aggregate_ = agg;
    if (!s.has(agg)) throw Error("aggregate '" + std::string(to_string(agg)) + "' is not an operation of the structure");
    return s;
  }

  friend bool operator==(const AlgebraicStructure&, const AlgebraicStructure&) = default;

 private:
  static constexpr unsigned bit(Op op) { return 1u << static_cast<unsigned>(op); }

  Carrier carrier_;
  Op aggregate_;
  unsigned mask_ = 0;
};

namespace detail {

inline Value raw_apply(Op op, const Value& a, const Value& b) {
  if (a.carrier() != b.carrier())
    throw Error("carrier mismatch: " + std::string(to_string(a.carrier())) + " vs " + std::string(to_string(b.carrier())));
  switch (op) {
    case Op::plus: return Value(a.carrier(), a.magnitude() + b.magnitude());
    case Op::times: return Value(a.carrier(), a.magnitude() * b.magnitude());
    case Op::min: return a.magnitude() <= b.magnitude() ? a : b;
    case Op::max: return a.magnitude() >= b.magnitude() ? a : b;
  }
  throw Error("unknown operation");
}

inline void check_carrier(const AlgebraicStructure& s, const Value& v) {
  if (v.carrier() != s.carrier())
    throw Error("carrier mismatch: value " + v.str() + " is in " + std::string(to_string(v.carrier())) +
                ", structure is over " + std::string(to_string(s.carrier())));
}

}  // namespace detail

inline Value apply_op(const AlgebraicStructure& s, Op op, const Value& a, const Value& b) {
  if (!s.has(op)) throw Error("operation '" + std::string(to_string(op)) + "' is not available in the structure");
  detail::check_carrier(s, a);
  detail::check_carrier(s, b);
  return detail::raw_apply(op, a, b);
}

/// Left fold of the aggregate; std::nullopt (undefined) on an empty input.
inline std::optional<Value> aggregate(const AlgebraicStructure& s, std::span<const Value> values) {
  if (values.empty()) return std::nullopt;
  detail::check_carrier(s, values.front());
  Value acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) acc = apply_op(s, s.aggregate_op(), acc, values[i]);
  return acc;
}

/// Aggregate of `copies` (>= 1) copies of v, equal to folding v that many
/// times but computed in closed form.
inline Value aggregate_repeated(const AlgebraicStructure& s, const Value& v, const Count& copies) {
  if (copies < 1) throw Error("aggregate_repeated needs at least one copy");
  detail::check_carrier(s, v);
  switch (s.aggregate_op()) {
    case Op::min:
    case Op::max: return v;
    case Op::plus: return Value(v.carrier(), v.magnitude() * Rational(copies));
    case Op::times: {
      Rational r = 1, base = v.magnitude();
      Count e = copies;
      while (e > 0) {
        if ((e & 1) != 0) r *= base;
        base *= base;
        e >>= 1;
      }
      return Value(v.carrier(), r);
    }
  }
  throw Error("unknown aggregate");
}

}  // namespace vaf
