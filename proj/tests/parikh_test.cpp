#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vaf/random.hpp"

namespace vaf {
namespace {

using test::nat;

TEST(ParikhTest, AnBn) {
  auto p = test::parse_pa(test::kAnBn);
  auto w = [&](std::string_view s) { return p.automaton().word_from_chars(s); };
  EXPECT_TRUE(pa_accepts(p, w("aabb")));
  EXPECT_TRUE(pa_accepts(p, w("ab")));
  EXPECT_FALSE(pa_accepts(p, w("aab")));
  EXPECT_FALSE(pa_accepts(p, w("abab")));
  EXPECT_EQ(oracle::naive_pa_accepting_runs(p, w("aabb")), 1u);
  EXPECT_EQ(oracle::naive_pa_accepting_runs(p, w("aab")), 0u);
}

TEST(ParikhTest, NoAcceptingStates) {
  auto p = test::parse_pa(R"(
pa d=1
states q
alphabet a
initial q
trans q a q (1)
target semilinear { linear base=(0) periods=[(1)] }
)");
  for_each_word(1, 4, [&](const Word& w) { EXPECT_FALSE(pa_accepts(p, w)); });
}

TEST(ParikhTest, TranslationExamples) {
  auto p = test::parse_pa(test::kAnBn);
  Vaf mx = pa_to_vaf(p, Op::max);
  Vaf pl = pa_to_vaf(p, Op::plus);
  EXPECT_EQ(mx.dimension(), 3u);
  Word aabb = p.automaton().word_from_chars("aabb");
  EXPECT_EQ(evaluate(mx, aabb).value, nat(1));
  EXPECT_EQ(evaluate(pl, aabb).value, nat(1));
  EXPECT_FALSE(evaluate(mx, p.automaton().word_from_chars("aab")).defined());
  ASSERT_TRUE(mx.annotation());
  EXPECT_TRUE(mx.annotation()->verified);
  EXPECT_EQ(mx.annotation()->update_class, UpdateClass::trans);
  EXPECT_TRUE(mx.annotation()->moveless);
  EXPECT_EQ(mx.annotation()->filter_class, FilterClass::fo);
  EXPECT_TRUE(variant_check(mx).deterministic);
  EXPECT_THROW(pa_to_vaf(p, Op::times), Error);
}

TEST(ParikhTest, RandomTranslationsAgree) {
  random::Rng rng(1234);
  for (int i = 0; i < 50; ++i) {
    auto p = random::random_pa(rng, 3, 2, 2);
    Vaf mx = pa_to_vaf(p, Op::max);
    Vaf pl = pa_to_vaf(p, Op::plus);
    for_each_word(2, 5, [&](const Word& w) {
      bool acc = pa_accepts(p, w);
      auto r = evaluate(mx, w);
      EXPECT_EQ(r.defined(), acc);
      if (acc) EXPECT_EQ(*r.value, nat(1));
      if (!w.empty()) {
        auto runs = oracle::naive_pa_accepting_runs(p, w);
        EXPECT_EQ(acc, runs > 0);
        auto rp = evaluate(pl, w);
        if (runs > 0) EXPECT_EQ(rp.value, Value::nat(static_cast<std::int64_t>(runs)));
        else EXPECT_FALSE(rp.defined());
      }
    });
  }
}

TEST(ParikhTest, AffineDoubling) {
  // x <- 2x + 1 from 0 reaches 7 after exactly three steps.
  auto p = test::parse_apa(R"(
apa d=1
states q
alphabet a
initial q
accepting q
trans q a q M=[(2)] v=(1)
target semilinear { linear base=(7) periods=[] }
)");
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(apa_accepts(p, Word(n, 0)), n == 3) << n;
  Vaf v = apa_to_vaf(p, Op::max);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(evaluate(v, Word(n, 0)).defined(), n == 3) << n;
  EXPECT_EQ(v.annotation()->update_class, UpdateClass::affine);
  EXPECT_TRUE(v.annotation()->verified);
}

TEST(ParikhTest, IdentityAffineIsLanguage) {
  auto p = test::parse_apa(R"(
apa d=1
states p q
alphabet a b
initial p
accepting q
trans p a q M=[(1)] v=(0)
trans q b q M=[(1)] v=(0)
target semilinear { linear base=(0) periods=[] }
)");
  for_each_word(2, 4, [&](const Word& w) {
    bool in_language = !w.empty() && w[0] == 0;
    for (std::size_t i = 1; i < w.size(); ++i) in_language = in_language && w[i] == 1;
    EXPECT_EQ(apa_accepts(p, w), in_language);
  });
}

TEST(ParikhTest, RandomAffineTranslationsAgree) {
  random::Rng rng(8080);
  for (int i = 0; i < 30; ++i) {
    auto p = random::random_apa(rng, 3, 2, 2);
    Vaf v = apa_to_vaf(p, Op::max);
    for_each_word(2, 4, [&](const Word& w) { EXPECT_EQ(evaluate(v, w).defined(), apa_accepts(p, w)); });
  }
}

}  // namespace
}  // namespace vaf
