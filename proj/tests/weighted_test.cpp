#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vaf/random.hpp"

namespace vaf {
namespace {

using test::nat;

constexpr std::string_view kDoubling = R"(
wa
states q
alphabet a
init q 1
trans q a q 2
final q 1
)";

TEST(WeightedTest, Examples) {
  auto loop = test::parse_wa(kDoubling);
  EXPECT_EQ(wa_eval(loop, Word(3, 0)), nat(8));
  EXPECT_EQ(wa_eval_paths(loop, Word(3, 0)), nat(8));
  EXPECT_EQ(oracle::naive_wa(loop, Word(3, 0)), nat(8));

  auto count = test::parse_wa(test::kCountAWa);
  Word abaa = count.automaton().word_from_chars("abaa");
  EXPECT_EQ(oracle::naive_wa(count, abaa), nat(3));
  EXPECT_EQ(wa_eval(count, abaa), nat(3));
  EXPECT_EQ(wa_eval_paths(count, abaa), nat(3));
}

TEST(WeightedTest, NoPathGivesZero) {
  auto wa = test::parse_wa(R"(
wa
states q
alphabet a b
init q 1
trans q a q 1
final q 1
)");
  Word ab{0, 1};
  EXPECT_EQ(wa_eval(wa, ab), nat(0));
  EXPECT_EQ(wa_eval_paths(wa, ab), nat(0));
  // The translation is undefined instead: no run survives.
  EXPECT_FALSE(evaluate(wa_to_vaf(wa), ab).defined());
}

TEST(WeightedTest, ZeroInitialWeightsAreUndefinedAfterTranslation) {
  auto wa = test::parse_wa(R"(
wa
states q
alphabet a
init q 0
trans q a q 1
final q 1
)");
  EXPECT_EQ(wa_eval(wa, Word{0}), nat(0));
  EXPECT_FALSE(evaluate(wa_to_vaf(wa), Word{0}).defined());
}

TEST(WeightedTest, RequiresSemiring) {
  EXPECT_THROW(test::parse_wa(R"(
structure carrier=nat aggregate=max
wa
states q
alphabet a
)"),
               Error);
}

TEST(WeightedTest, Unambiguity) {
  EXPECT_TRUE(wa_is_unambiguous(test::parse_wa(kDoubling)));
  EXPECT_FALSE(wa_is_unambiguous(test::parse_wa(test::kCountAWa)));
}

TEST(WeightedTest, EvaluatorsAgreeWithOracle) {
  random::Rng rng(4242);
  for (int i = 0; i < 80; ++i) {
    auto wa = random::random_wa(rng, 3, 2, 3);
    for_each_word(2, 4, [&](const Word& w) {
      if (w.empty()) return;
      Value expected = oracle::naive_wa(wa, w);
      EXPECT_EQ(wa_eval_paths(wa, w), expected);
      EXPECT_EQ(wa_eval_frontier(wa, w), expected);
    });
  }
}

TEST(WeightedTest, TranslationAgreesOnPositiveWeights) {
  random::Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    auto wa = random::random_wa(rng, 3, 2, 3);
    Vaf v = wa_to_vaf(wa);
    ASSERT_TRUE(v.annotation().has_value());
    EXPECT_TRUE(v.annotation()->verified);
    EXPECT_EQ(v.annotation()->update_class, UpdateClass::scale);
    EXPECT_TRUE(v.annotation()->moveless);
    EXPECT_TRUE(v.annotation()->resetless);
    for_each_word(2, 4, [&](const Word& w) {
      if (w.empty()) return;
      auto r = evaluate(v, w);
      if (r.defined()) EXPECT_EQ(*r.value, wa_eval(wa, w));
      else EXPECT_EQ(wa_eval(wa, w), nat(0));
    });
  }
}

TEST(WeightedTest, TranslationWithZeroWeightIsNotResetless) {
  auto wa = test::parse_wa(R"(
wa
states q
alphabet a
init q 1
trans q a q 0
final q 1
)");
  Vaf v = wa_to_vaf(wa);
  EXPECT_FALSE(v.annotation()->resetless);
  EXPECT_TRUE(v.annotation()->verified);
}

}  // namespace
}  // namespace vaf
