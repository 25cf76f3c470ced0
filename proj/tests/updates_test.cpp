#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vaf/random.hpp"

namespace vaf {
namespace {

using test::nat;

const AlgebraicStructure kNat(Carrier::nat, Op::plus);

UpdateFunction parse(std::string_view text, std::size_t m) {
  syntax::TokenStream ts(text);
  return syntax::parse_update(ts, Carrier::nat, m);
}

TEST(UpdatesTest, EvalExamples) {
  std::vector<Value> x{nat(5), nat(7)};
  EXPECT_EQ(eval_update(kNat, UpdateFunction::identity(2), x), x);
  auto trans = parse("[ (plus (var 2) (const 3)) (plus (var 2) (const 0)) ]", 2);
  EXPECT_EQ(eval_update(kNat, trans, x), (std::vector<Value>{nat(10), nat(7)}));
  auto scale = parse("[ (times (var 1) (const 2)) ]", 1);
  EXPECT_EQ(eval_update(kNat, scale, std::vector<Value>{nat(3)}), std::vector<Value>{nat(6)});
}

TEST(UpdatesTest, EvalErrors) {
  auto f = UpdateFunction::identity(2);
  EXPECT_THROW(eval_update(kNat, f, std::vector<Value>{nat(1)}), Error);
  auto neg = UpdateFunction(1, {plus(var(1), cst(test::integer(-1)))});
  EXPECT_THROW(eval_update(kNat, neg, std::vector<Value>{nat(1)}), Error);
  EXPECT_THROW(UpdateFunction(1, {var(2)}), Error);
  EXPECT_THROW(var(0), Error);
}

TEST(UpdatesTest, CopylessExamples) {
  EXPECT_TRUE(is_copyless(parse("[ (plus (var 1) (var 2)) (const 5) ]", 2)));
  EXPECT_FALSE(is_copyless(parse("[ (plus (var 1) (var 2)) (var 1) ]", 2)));
  EXPECT_FALSE(is_copyless(parse("[ (times (var 1) (var 1)) ]", 1)));
}

TEST(UpdatesTest, MovelessExamples) {
  EXPECT_TRUE(is_moveless(parse("[ (plus (var 1) (const 1)) (times (var 2) (const 2)) ]", 2)));
  EXPECT_FALSE(is_moveless(parse("[ (var 2) (var 1) ]", 2)));
  EXPECT_TRUE(is_moveless(parse("[ (var 1) (const 7) ]", 2)));
  EXPECT_THROW(is_moveless(parse("[ (var 1) ]", 2)), Error);
}

TEST(UpdatesTest, ResetlessExamples) {
  EXPECT_TRUE(is_resetless_syntactic(parse("[ (plus (var 1) (const 1)) ]", 1)));
  EXPECT_FALSE(is_resetless_syntactic(parse("[ (times (var 1) (const 0)) (var 2) ]", 2)));
  EXPECT_FALSE(is_resetless_syntactic(parse("[ (const 7) ]", 1)));
}

TEST(UpdatesTest, ClassifyExamples) {
  auto tags = classify(parse("[ (plus (var 2) (const 3)) (plus (var 1) (const 0)) ]", 2), kNat);
  EXPECT_EQ(tags.str(), "{top, affine, trans}");
  tags = classify(parse("[ (times (var 1) (const 2)) (times (var 2) (const 5)) ]", 2), kNat);
  EXPECT_EQ(tags.str(), "{top, affine, scale}");
  tags = classify(parse("[ (times (var 1) (var 2)) ]", 2), kNat);
  EXPECT_EQ(tags.str(), "{top}");
}

TEST(UpdatesTest, ClassifyNormalizesThroughConstants) {
  // 2 * (x1 + 1) = 2 x1 + 2 and min of constants folds.
  auto f = parse("[ (times (const 2) (plus (var 1) (const 1))) (plus (var 2) (min (const 3) (const 9))) ]", 2);
  auto a = to_affine(kNat, f);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->matrix[0][0], nat(2));
  EXPECT_EQ(a->offset[0], nat(2));
  EXPECT_EQ(a->offset[1], nat(3));
  EXPECT_FALSE(to_affine(kNat, parse("[ (max (var 1) (const 1)) ]", 1)).has_value());
}

TEST(UpdatesTest, AffineEvalExamples) {
  AffineUpdate constant{{{nat(0), nat(0)}, {nat(0), nat(0)}}, {nat(4), nat(9)}};
  EXPECT_EQ(affine_eval(kNat, constant, std::vector<Value>{nat(8), nat(1)}), (std::vector<Value>{nat(4), nat(9)}));
  AffineUpdate id{{{nat(1), nat(0)}, {nat(0), nat(1)}}, {nat(0), nat(0)}};
  EXPECT_EQ(affine_eval(kNat, id, std::vector<Value>{nat(2), nat(3)}), (std::vector<Value>{nat(2), nat(3)}));
  // [[1,1],[0,2]] (2,3) + (0,1) = (5, 7), hand-checked and cross-checked on the tree form.
  AffineUpdate m{{{nat(1), nat(1)}, {nat(0), nat(2)}}, {nat(0), nat(1)}};
  std::vector<Value> x{nat(2), nat(3)}, expected{nat(5), nat(7)};
  EXPECT_EQ(affine_eval(kNat, m, x), expected);
  EXPECT_EQ(eval_update(kNat, expr_of(m), x), expected);
  EXPECT_THROW(affine_eval(kNat, m, std::vector<Value>{nat(1)}), Error);
}

TEST(UpdatesTest, AffineMatrixAndTreeFormsAgree) {
  random::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng.below(3), m = 1 + rng.below(3);
    AffineUpdate a;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Value> row;
      for (std::size_t c = 0; c < m; ++c) row.push_back(nat(rng.chance(50) ? rng.between(0, 4) : 0));
      a.matrix.push_back(row);
      a.offset.push_back(nat(rng.between(0, 4)));
    }
    std::vector<Value> x;
    for (std::size_t c = 0; c < m; ++c) x.push_back(nat(rng.between(0, 20)));
    UpdateFunction f = expr_of(a);
    EXPECT_EQ(affine_eval(kNat, a, x), eval_update(kNat, f, x));
    EXPECT_TRUE(classify(f, kNat).contains(UpdateClass::affine));
    EXPECT_EQ(to_affine(kNat, f), a);
  }
}

TEST(UpdatesTest, TransPerturbationDropsTrans) {
  AffineUpdate t{{{nat(0), nat(1)}, {nat(1), nat(0)}}, {nat(3), nat(0)}};
  EXPECT_TRUE(classify(expr_of(t), kNat).contains(UpdateClass::trans));
  t.matrix[0][0] = nat(1);
  auto tags = classify(expr_of(t), kNat);
  EXPECT_FALSE(tags.contains(UpdateClass::trans));
  EXPECT_TRUE(tags.contains(UpdateClass::affine));
}

TEST(UpdatesTest, PredicatesIgnoreUnusedIndices) {
  // Widening the input arity with unused registers changes nothing.
  auto f = parse("[ (plus (var 1) (var 2)) (const 5) ]", 2);
  auto g = UpdateFunction(4, f.outputs());
  EXPECT_EQ(is_copyless(f), is_copyless(g));
  auto h = parse("[ (var 1) (plus (var 2) (const 1)) ]", 2);
  auto h3 = UpdateFunction(3, {h.output(0), h.output(1), var(3)});
  EXPECT_EQ(is_moveless(h), is_moveless(h3));
}

TEST(UpdatesTest, SyntacticResetlessIsSoundOnSamples) {
  random::Rng rng(5);
  int non_resetless = 0;
  for (int i = 0; i < 200; ++i) {
    UpdateFunction f = random::random_update(rng, 2, 2);
    if (is_resetless_syntactic(f)) continue;
    ++non_resetless;
    bool some_constant = false;
    for (std::size_t comp = 0; comp < f.outputs_count() && !some_constant; ++comp) {
      std::optional<Value> first;
      bool constant = true;
      for (int s = 0; s < 50 && constant; ++s) {
        std::vector<Value> x{nat(rng.between(0, 100)), nat(rng.between(0, 100))};
        Value y = eval_update(kNat, f, x)[comp];
        if (!first) first = y;
        constant = *first == y;
      }
      some_constant = constant;
    }
    EXPECT_TRUE(some_constant);
  }
  EXPECT_GT(non_resetless, 0);
}

TEST(UpdatesTest, SexprRoundTrip) {
  random::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    UpdateFunction f = random::random_update(rng, 3, 3);
    std::string text = syntax::print_update(f);
    EXPECT_EQ(parse(text, 3), f);
  }
  // n-ary plus nests to the right.
  auto f = parse("[ (plus (var 1) (var 2) (const 1)) ]", 2);
  EXPECT_EQ(f.output(0), plus(var(1), plus(var(2), cst(nat(1)))));
}

}  // namespace
}  // namespace vaf
