#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vaf/random.hpp"

namespace vaf {
namespace {

using test::nat;

std::vector<Value> nats(std::initializer_list<std::int64_t> xs) {
  std::vector<Value> out;
  for (auto x : xs) out.push_back(nat(x));
  return out;
}

Filter formula(std::string_view text, std::size_t d) { return Filter::formula(syntax::parse_formula(text), d); }

TEST(FiltersTest, MemberExamples) {
  EXPECT_TRUE(member(Filter::top(3), nats({9, 0, 4})));
  Filter eq = formula("x1 = x2", 2);
  EXPECT_TRUE(member(eq, nats({4, 4})));
  EXPECT_FALSE(member(eq, nats({4, 5})));

  LinearSet l({1, 0}, {{2, 0}, {0, 3}});
  Filter s = Filter::semilinear(SemilinearSet(2, {l}));
  // Oracle: enumerate coefficient pairs within the coordinate bound.
  EXPECT_TRUE(oracle::linear_points(l, 10).count(NatVector{5, 6}));
  EXPECT_FALSE(oracle::linear_points(l, 10).count(NatVector{2, 0}));
  EXPECT_TRUE(member(s, nats({5, 6})));
  EXPECT_FALSE(member(s, nats({2, 0})));
}

TEST(FiltersTest, MemberErrors) {
  EXPECT_THROW(member(Filter::top(2), nats({1})), Error);
  Filter s = Filter::semilinear(SemilinearSet(1, {LinearSet({0}, {{1}})}));
  EXPECT_THROW(member(s, std::vector<Value>{test::integer(1)}), Error);
  EXPECT_THROW(formula("x3 = 1", 2), Error);
  EXPECT_THROW(LinearSet({1, 0}, {{1}}), Error);
  EXPECT_THROW(LinearSet({-1}, {}), Error);
}

TEST(FiltersTest, LinearMemberExamples) {
  LinearSet point({3, 4}, {});
  EXPECT_TRUE(linear_member(point, NatVector{3, 4}).has_value());
  LinearSet evens({0}, {{2}});
  EXPECT_FALSE(linear_member(evens, NatVector{7}).has_value());
  LinearSet l({1, 1}, {{1, 0}, {1, 1}});
  auto w = linear_member(l, NatVector{3, 2});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, (std::vector<BigInt>{1, 1}));
  EXPECT_THROW(linear_member(l, NatVector{1}), Error);
}

TEST(FiltersTest, ZeroPeriodsAreHarmless) {
  LinearSet l({2}, {{0}, {3}});
  EXPECT_TRUE(linear_member(l, NatVector{8}).has_value());
  EXPECT_FALSE(linear_member(l, NatVector{7}).has_value());
  LinearSet mixed({0, 0}, {{0, 2}});
  EXPECT_TRUE(linear_member(mixed, NatVector{0, 6}).has_value());
  EXPECT_FALSE(linear_member(mixed, NatVector{1, 6}).has_value());
}

TEST(FiltersTest, LinearMemberMatchesEnumeration) {
  random::Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    std::size_t d = 1 + rng.below(3);
    LinearSet l = random::random_linear_set(rng, d, 3, 5);
    auto points = oracle::linear_points(l, 8);
    NatVector x(d, 0);
    // All x with coordinates <= 8.
    while (true) {
      auto w = linear_member(l, x);
      EXPECT_EQ(w.has_value(), points.count(x) > 0);
      if (w) {
        NatVector y = l.base;
        for (std::size_t k = 0; k < l.periods.size(); ++k)
          for (std::size_t j = 0; j < d; ++j) y[j] += (*w)[k] * l.periods[k][j];
        EXPECT_EQ(y, x);
      }
      std::size_t j = d;
      while (j > 0 && x[j - 1] == 8) x[--j] = 0;
      if (j == 0) break;
      ++x[j - 1];
    }
    EXPECT_TRUE(linear_member(l, l.base).has_value());
  }
}

TEST(FiltersTest, UnionIsMonotone) {
  random::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    SemilinearSet s = random::random_semilinear(rng, 2, 2, 2, 4);
    SemilinearSet bigger = s.with_component(random::random_linear_set(rng, 2, 2, 4));
    for (std::int64_t a = 0; a <= 8; ++a)
      for (std::int64_t b = 0; b <= 8; ++b)
        if (member(Filter::semilinear(s), nats({a, b}))) EXPECT_TRUE(member(Filter::semilinear(bigger), nats({a, b})));
  }
}

TEST(FiltersTest, FormulaBooleanLaws) {
  random::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    QfFormula phi = random::random_formula(rng, 2, 6), psi = random::random_formula(rng, 2, 6);
    for (int k = 0; k < 10; ++k) {
      std::vector<Value> x{Value::rational(rng.between(-6, 12), rng.between(1, 3)), Value::rational(rng.between(-6, 12), 1)};
      EXPECT_EQ(QfFormula::negation(phi).evaluate(x), !phi.evaluate(x));
      EXPECT_EQ(QfFormula::conjunction(phi, psi).evaluate(x), phi.evaluate(x) && psi.evaluate(x));
      EXPECT_EQ(QfFormula::disjunction(phi, psi).evaluate(x), phi.evaluate(x) || psi.evaluate(x));
    }
  }
}

TEST(FiltersTest, FormulaSyntax) {
  EXPECT_TRUE(formula("2*x1 + 3 <= x2 && !(x1 = 0)", 2).as_formula()->formula.evaluate(nats({1, 5})));
  EXPECT_FALSE(formula("2*x1 + 3 <= x2 && !(x1 = 0)", 2).as_formula()->formula.evaluate(nats({0, 5})));
  EXPECT_TRUE(formula("(x1 + 1) * 2 = x2 || false", 2).as_formula()->formula.evaluate(nats({2, 6})));
  EXPECT_TRUE(formula("(x1 < 2 || x2 > 3) && x1 != 7", 2).as_formula()->formula.evaluate(nats({5, 4})));
  EXPECT_TRUE(formula("x1 - x2 = -1", 2).as_formula()->formula.evaluate(nats({2, 3})));
  EXPECT_THROW(syntax::parse_formula("x1 * x2 = 1"), ParseError);
  EXPECT_THROW(syntax::parse_formula("x1 = "), ParseError);
  EXPECT_THROW(syntax::parse_formula("x1 % 2 = 0"), ParseError);

  random::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    QfFormula f = random::random_formula(rng, 3, 5, 3);
    std::string text = syntax::print_formula(f);
    EXPECT_EQ(syntax::print_formula(syntax::parse_formula(text)), text);
    for (int k = 0; k < 5; ++k) {
      auto x = nats({rng.between(0, 9), rng.between(0, 9), rng.between(0, 9)});
      EXPECT_EQ(syntax::parse_formula(text).evaluate(x), f.evaluate(x)) << text;
    }
  }
}

TEST(FiltersTest, SemilinearToFormula) {
  EXPECT_EQ(semilinear_to_formula(SemilinearSet(2)), "0 = 1");
  EXPECT_EQ(semilinear_to_formula(SemilinearSet(2, {LinearSet({2, 3}, {})})), "x1 = 2 && x2 = 3");
  std::string one = semilinear_to_formula(SemilinearSet(2, {LinearSet({1, 0}, {{2, 0}})}));
  EXPECT_EQ(one, "exists k1. (x1 = 1 + 2*k1 && x2 = 0)");
  EXPECT_EQ(one.find("k2"), std::string::npos);
  std::string two = semilinear_to_formula(SemilinearSet(1, {LinearSet({0}, {{1}}), LinearSet({5}, {})}));
  EXPECT_EQ(two, "(exists k1. (x1 = 0 + k1)) || (x1 = 5)");
}

}  // namespace
}  // namespace vaf
