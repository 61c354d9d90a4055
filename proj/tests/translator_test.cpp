#include <gtest/gtest.h>

#include <string>

#include "folforge/folforge.hpp"
#include "test_support.hpp"

namespace folforge {
namespace {

std::size_t count_word(const std::string& text, const std::string& word) {
  std::size_t n = 0;
  for (const auto& tok : utf8::split_whitespace(text)) {
    std::string t(tok);
    while (!t.empty() && (t.back() == ',' || t.back() == '.')) t.pop_back();
    if (t == word) ++n;
  }
  return n;
}

TEST(Translate, Examples) {
  EXPECT_EQ(translate(parse("∀chef(¬LivesIn(chef, zone))")),
            "For every chef, it is not the case that chef lives in zone.");
  EXPECT_EQ(translate(parse("IsHappy(a)")), "A is happy.");
  EXPECT_EQ(translate(parse("Like(chef, cat)")), "Chef likes cat.");
  EXPECT_EQ(translate(parse("∃x(IsHappy(x) ∧ LivesIn(x, zone))")),
            "There exists some x such that x is happy and x lives in zone.");
  EXPECT_EQ(translate(parse("IsHappy(chef) → IsThoughtful(chef)")),
            "If chef is happy, then chef is thoughtful.");
}

TEST(Translate, ExclusiveDisjunctionIsMarked) {
  const std::string s = translate(parse("IsHappy(chef) ⊕ IsThoughtful(chef)"));
  EXPECT_EQ(s, "Either chef is happy or chef is thoughtful, but not both.");
  EXPECT_EQ(translate(parse("IsHappy(chef) ∨ IsThoughtful(chef)")).find("but not both"),
            std::string::npos);
}

TEST(Translate, FormulaArguments) {
  EXPECT_EQ(translate(parse("IsHappy(LivesIn(chef, zone))")),
            "It holds of chef lives in zone that is happy.");
  EXPECT_EQ(translate(parse("Like(chef, IsHappy(cat))")),
            "Chef likes the claim that cat is happy.");
}

TEST(Translate, AbstractSymbolsAreRejected) {
  EXPECT_THROW(translate(parse("A(a)")), UnlexicalizedInput);
  EXPECT_THROW(translate(parse("IsHappy(chef) ∧ B1(chef)")), UnlexicalizedInput);
}

TEST(Translate, CamelCaseAndInflection) {
  EXPECT_EQ(detail::predicate_phrase("LivesIn"), "lives in");
  EXPECT_EQ(detail::predicate_phrase("IsHappy"), "is happy");
  EXPECT_EQ(detail::predicate_phrase("Like"), "likes");
  EXPECT_EQ(detail::predicate_phrase("HasOfficeIn"), "has office in");
  EXPECT_EQ(detail::predicate_phrase("Teach"), "teaches");
  EXPECT_EQ(detail::predicate_phrase("Study"), "studies");
  EXPECT_EQ(detail::predicate_phrase("Play"), "plays");
  EXPECT_EQ(detail::predicate_phrase("Have"), "has");
}

TEST(Translate, TotalOnLexicalizedCorpus) {
  const auto& vocab = Vocabulary::builtin();
  Rng gen(31), lex(32);
  GenerationConfig cfg;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = i % 2 == 0 ? sample_standard(cfg, gen) : sample_nested(cfg, gen);
    const Formula g = lexicalize(f, vocab, lex);
    const std::string s = translate(g);
    ASSERT_FALSE(s.empty());
    ASSERT_FALSE(std::islower(static_cast<unsigned char>(s[0]))) << s;
    ASSERT_EQ(s.back(), '.');
    const auto negations = static_cast<std::size_t>(testing::count_nodes(g, 1));
    ASSERT_GE(count_word(s, "not"), negations) << s;
    const auto xors = static_cast<std::size_t>(testing::count_connective(g, Connective::Xor));
    std::size_t marked = 0;
    for (auto pos = s.find("but not both"); pos != std::string::npos;
         pos = s.find("but not both", pos + 1)) {
      ++marked;
    }
    ASSERT_EQ(marked, xors) << s;
  }
}

}  // namespace
}  // namespace folforge
