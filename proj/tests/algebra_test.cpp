#include <gtest/gtest.h>

#include <vector>

#include "test_util.hpp"
#include "vaf/random.hpp"

namespace vaf {
namespace {

using test::nat;

TEST(AlgebraTest, ApplyOpExamples) {
  AlgebraicStructure n(Carrier::nat, Op::plus);
  EXPECT_EQ(apply_op(n, Op::plus, nat(3), nat(4)), nat(7));
  EXPECT_EQ(apply_op(n, Op::times, nat(5), nat(0)), nat(0));
  AlgebraicStructure q(Carrier::rational, Op::plus);
  EXPECT_EQ(apply_op(q, Op::times, Value::rational(2, 3), Value::rational(3, 4)), Value::rational(1, 2));
  EXPECT_EQ(apply_op(q, Op::times, Value::rational(2, 3), Value::rational(3, 4)).str(), "1/2");
}

TEST(AlgebraTest, ApplyOpErrors) {
  AlgebraicStructure n(Carrier::nat, Op::plus);
  EXPECT_THROW(apply_op(n, Op::plus, nat(1), test::integer(1)), Error);
  const Op only_plus[] = {Op::plus};
  AlgebraicStructure restricted(Carrier::nat, Op::plus, only_plus);
  EXPECT_THROW(apply_op(restricted, Op::times, nat(1), nat(2)), Error);
  EXPECT_THROW(AlgebraicStructure(Carrier::nat, Op::max, only_plus), Error);
  EXPECT_FALSE(op_from_string("minus").has_value());
}

TEST(AlgebraTest, AggregateExamples) {
  AlgebraicStructure plus(Carrier::nat, Op::plus), max(Carrier::nat, Op::max);
  std::vector<Value> five{nat(5)}, three{nat(1), nat(2), nat(3)}, none;
  EXPECT_EQ(aggregate(plus, five), nat(5));
  EXPECT_EQ(aggregate(plus, three), nat(6));
  EXPECT_FALSE(aggregate(max, none).has_value());
  EXPECT_EQ(aggregate(max, three), nat(3));
}

TEST(AlgebraTest, ValueInvariants) {
  EXPECT_THROW(Value(Carrier::nat, -1), Error);
  EXPECT_THROW(Value::parse("1/2", Carrier::integer), Error);
  EXPECT_THROW(Value::parse("1/0", Carrier::rational), Error);
  EXPECT_THROW(Value::parse("abc", Carrier::nat), Error);
  EXPECT_EQ(Value::parse("4/6", Carrier::rational).str(), "2/3");
  EXPECT_EQ(Value::parse("-3/6", Carrier::rational), Value::rational(-1, 2));
  EXPECT_THROW(Value::parse("3/-6", Carrier::rational), Error);
  EXPECT_EQ(Value::parse("-7", Carrier::integer).str(), "-7");
  EXPECT_EQ(Value::parse("10/5", Carrier::nat), nat(2));
}

TEST(AlgebraTest, CanonicalTextRoundTrip) {
  random::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Value v = Value::rational(rng.between(-50, 50), rng.between(1, 30));
    EXPECT_EQ(Value::parse(v.str(), Carrier::rational).str(), v.str());
    Value z(Carrier::integer, rng.between(-1000, 1000));
    EXPECT_EQ(Value::parse(z.str(), Carrier::integer), z);
  }
}

struct CarrierOp {
  Carrier carrier;
  Op op;
  friend void PrintTo(const CarrierOp& p, std::ostream* os) { *os << to_string(p.carrier) << "_" << to_string(p.op); }
};

class AggregateLawsTest : public ::testing::TestWithParam<CarrierOp> {};

TEST_P(AggregateLawsTest, CommutativeAssociativeCoherent) {
  auto [carrier, agg] = GetParam();
  AlgebraicStructure s(carrier, agg);
  random::Rng rng(static_cast<std::uint64_t>(carrier) * 10 + static_cast<std::uint64_t>(agg));
  auto draw = [&] {
    switch (carrier) {
      case Carrier::nat: return Value(carrier, rng.between(0, 9));
      case Carrier::integer: return Value(carrier, rng.between(-9, 9));
      default: return Value::rational(rng.between(-9, 9), rng.between(1, 5));
    }
  };
  for (int i = 0; i < 300; ++i) {
    Value a = draw(), b = draw(), c = draw();
    std::vector<Value> ab{a, b}, ba{b, a};
    EXPECT_EQ(aggregate(s, ab), aggregate(s, ba));
    EXPECT_EQ(apply_op(s, agg, apply_op(s, agg, a, b), c), apply_op(s, agg, a, apply_op(s, agg, b, c)));
    std::vector<Value> single{a};
    EXPECT_EQ(aggregate(s, single), a);
    // Fold coherence: aggregate({a} + S) = a (op) aggregate(S).
    std::vector<Value> rest{b, c}, all{a, b, c};
    EXPECT_EQ(aggregate(s, all), apply_op(s, agg, a, *aggregate(s, rest)));
    // Closed-form repetition equals the explicit fold.
    std::vector<Value> copies(4, b);
    EXPECT_EQ(aggregate_repeated(s, b, 4), aggregate(s, copies));
  }
}

INSTANTIATE_TEST_SUITE_P(AllCarriers, AggregateLawsTest,
                         ::testing::Values(CarrierOp{Carrier::nat, Op::plus}, CarrierOp{Carrier::nat, Op::max},
                                           CarrierOp{Carrier::nat, Op::min}, CarrierOp{Carrier::nat, Op::times},
                                           CarrierOp{Carrier::integer, Op::plus}, CarrierOp{Carrier::integer, Op::min},
                                           CarrierOp{Carrier::rational, Op::plus},
                                           CarrierOp{Carrier::rational, Op::times}),
                         [](const auto& info) {
                           return ::testing::PrintToString(info.param);
                         });

}  // namespace
}  // namespace vaf
