#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace kurosh;
using namespace fixtures;

namespace {

// Oracle: expand every syllable into unit letters and cancel with a stack.
std::vector<std::pair<Side, Integer>> letters_reduced(const FreeProduct& g, const std::vector<Syllable>& raw) {
  std::vector<std::pair<Side, Integer>> stack;
  for (const auto& s : raw) {
    const auto& f = g.factor(s.side);
    if (!stack.empty() && stack.back().first == s.side) {
      stack.back().second = f.multiply(stack.back().second, s.elem);
      if (stack.back().second == 0) stack.pop_back();
    } else if (s.elem != 0) {
      stack.emplace_back(s.side, s.elem);
    }
  }
  return stack;
}

std::size_t free_ball_size(std::size_t n) {
  std::size_t total = 1, layer = 4;
  for (std::size_t k = 1; k <= n; ++k, layer *= 3) total += layer;
  return total;
}

}  // namespace

TEST(Words, NormalizeEmptyIsIdentity) {
  auto g = free_group();
  EXPECT_TRUE(g.normalize({}).is_identity());
}

TEST(Words, NormalizeCancelsIntegerSyllables) {
  auto g = free_group();
  EXPECT_TRUE(g.normalize({{Side::left, 2}, {Side::left, -2}}).is_identity());
}

TEST(Words, NormalizeFoldsFiniteTables) {
  auto g = z2_z3();
  std::vector<Syllable> raw{{Side::left, 1}, {Side::right, 1}, {Side::right, 1}, {Side::right, 1}, {Side::left, 1}};
  EXPECT_TRUE(letters_reduced(g, {raw[1], raw[2], raw[3]}).empty());
  EXPECT_TRUE(g.normalize(raw).is_identity());
}

TEST(Words, NormalizeRejectsOutOfRange) {
  auto g = z2_z3();
  EXPECT_THROW(g.normalize({{Side::left, 2}}), DomainError);
  EXPECT_THROW(g.parse("c"), DomainError);
}

TEST(Words, MultiplyExamples) {
  auto g = free_group();
  EXPECT_EQ(g.multiply(g.parse("a b"), g.parse("b^-1 a")), g.parse("a^2"));
  EXPECT_EQ(g.format(g.multiply(g.parse("a b"), g.parse("a b"))), "a b a b");
}

TEST(Words, MultiplyMatchesConcatenationOracle) {
  for (const auto& g : {free_group(), z2_z3()}) {
    Lcg rng(7);
    for (int i = 0; i < 200; ++i) {
      Word u = random_word(g, rng, rng.below(6));
      Word v = random_word(g, rng, rng.below(6));
      std::vector<Syllable> raw = u.syllables();
      raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
      Word p = g.multiply(u, v);
      auto oracle = letters_reduced(g, raw);
      ASSERT_EQ(p.syllable_length(), oracle.size());
      for (std::size_t k = 0; k < oracle.size(); ++k) {
        EXPECT_EQ(p.syllables()[k].side, oracle[k].first);
        EXPECT_EQ(p.syllables()[k].elem, oracle[k].second);
      }
    }
  }
}

TEST(Words, GroupAxiomsOnSamples) {
  for (const auto& g : {free_group(), z2_z3(), FreeProduct(s3("s", "t"), FactorGroup::integer("H", "b"))}) {
    Lcg rng(11);
    for (int i = 0; i < 100; ++i) {
      Word u = random_word(g, rng, 4), v = random_word(g, rng, 5), w = random_word(g, rng, 3);
      EXPECT_EQ(g.multiply(g.multiply(u, v), w), g.multiply(u, g.multiply(v, w)));
      EXPECT_EQ(g.multiply(u, g.identity()), u);
      EXPECT_TRUE(g.multiply(u, g.invert(u)).is_identity());
      EXPECT_EQ(g.invert(g.invert(u)), u);
    }
  }
}

TEST(Words, NormalizeIsOrderIndependent) {
  auto g = free_group();
  Lcg rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Syllable> raw;
    for (int k = 0; k < 10; ++k) raw.push_back({rng.below(2) ? Side::left : Side::right, Integer(rng.between(-2, 2))});
    std::size_t cut = rng.below(raw.size() + 1);
    Word left = g.normalize({raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(cut)});
    Word right = g.normalize({raw.begin() + static_cast<std::ptrdiff_t>(cut), raw.end()});
    Word all = g.normalize(raw);
    EXPECT_EQ(g.multiply(left, right), all);
    EXPECT_EQ(g.normalize(all.syllables()), all);
  }
}

TEST(Words, InvertExamples) {
  auto g = free_group();
  EXPECT_TRUE(g.invert(g.identity()).is_identity());
  EXPECT_EQ(g.invert(g.parse("a b")), g.parse("b^-1 a^-1"));
}

TEST(Words, SyllableLength) {
  auto g = free_group();
  EXPECT_EQ(g.identity().syllable_length(), 0u);
  EXPECT_EQ(g.parse("a b a^-1").syllable_length(), 3u);
  EXPECT_EQ(g.normalize({{Side::left, 1}, {Side::right, 1}, {Side::right, -1}, {Side::left, 1}}).syllable_length(), 1u);
}

TEST(Words, BallSizes) {
  auto z = z_only();
  EXPECT_EQ(z.ball(2).size(), 5u);
  auto g = free_group();
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(g.ball(n).size(), free_ball_size(n));
  EXPECT_EQ(g.ball(0), std::vector<Word>{g.identity()});
}

TEST(Words, BallProductsStayInBall) {
  auto g = z2_z3();
  auto b1 = g.ball(1), b2 = g.ball(2), b3 = g.ball(3);
  std::set<Word> s3(b3.begin(), b3.end());
  EXPECT_LE(b1.size(), b2.size());
  EXPECT_LE(b2.size(), b3.size());
  for (const auto& u : b1)
    for (const auto& v : b2) EXPECT_TRUE(s3.count(g.multiply(u, v)));
}

TEST(Words, LiteralRoundTrip) {
  auto g = free_group();
  for (std::string lit : {"1", "a", "a^-1", "a^2 b^-3 a", "b a^12345678901234567890"}) {
    EXPECT_EQ(g.format(g.parse(lit)), lit);
  }
  EXPECT_EQ(g.format(g.parse("a a b^0 b")), "a^2 b");
  auto h = FreeProduct(s3("s", "t"), FactorGroup::cyclic("H", 3, "u"));
  Lcg rng(5);
  for (int i = 0; i < 50; ++i) {
    Word w = random_word(h, rng, 5);
    EXPECT_EQ(h.parse(h.format(w)), w);
  }
}

TEST(Words, BigExponentsDoNotOverflow) {
  auto g = free_group();
  Word w = g.parse("a^9223372036854775807");
  Word p = g.multiply(w, w);
  EXPECT_EQ(g.format(p), "a^18446744073709551614");
}
