#include <gtest/gtest.h>

#include <set>
#include <string>

#include "folforge/folforge.hpp"
#include "test_support.hpp"

namespace folforge {
namespace {

GenerationConfig window(int lo, int hi) {
  GenerationConfig cfg;
  cfg.min_depth = lo;
  cfg.max_depth = hi;
  return cfg;
}

TEST(Generator, DepthOneGivesAtoms) {
  const auto cfg = window(1, 1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng a(seed), b(seed);
    const Formula s = sample_standard(cfg, a);
    const Formula n = sample_nested(cfg, b);
    ASSERT_NE(s.as<Atom>(), nullptr);
    ASSERT_NE(n.as<Atom>(), nullptr);
    EXPECT_FALSE(testing::any_formula_argument(n));
  }
  Rng rng(0);
  EXPECT_EQ(render(sample_standard(cfg, rng)).substr(0, 3), "A(a");
}

TEST(Generator, StandardStaysInWindowWithoutNesting) {
  const auto cfg = window(4, 10);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    const Formula f = sample_standard(cfg, rng);
    const int d = testing::height_oracle(f);
    ASSERT_GE(d, 4);
    ASSERT_LE(d, 10);
    ASSERT_FALSE(testing::any_formula_argument(f)) << render(f);
  }
}

TEST(Generator, NestedStaysInWindowAndRoundTrips) {
  const auto cfg = window(4, 10);
  int with_nesting = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    const Formula f = sample_nested(cfg, rng);
    const int d = testing::height_oracle(f);
    ASSERT_GE(d, 4);
    ASSERT_LE(d, 10);
    ASSERT_EQ(parse(render(f)), f);
    with_nesting += testing::any_formula_argument(f) ? 1 : 0;
  }
  EXPECT_GT(with_nesting, 5000);
}

TEST(Generator, EveryDepthInWindowIsReachable) {
  const auto cfg = window(4, 10);
  std::set<int> seen;
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) seen.insert(structural_depth(sample_standard(cfg, rng)));
  EXPECT_EQ(seen, (std::set<int>{4, 5, 6, 7, 8, 9, 10}));
}

TEST(Generator, NamingConventions) {
  Rng rng(9);
  const auto cfg = window(4, 10);
  for (int i = 0; i < 500; ++i) {
    const Formula f = sample_standard(cfg, rng);
    // Predicates are introduced in order A, B, C, ... left to right.
    std::vector<std::string> preds;
    auto walk = [&](auto&& self, const Formula& g) -> void {
      std::visit(Overloaded{
                     [&](const Atom& a) { preds.push_back(a.predicate); },
                     [&](const Negation& n) { self(self, n.inner); },
                     [&](const Binary& b) {
                       self(self, b.left);
                       self(self, b.right);
                     },
                     [&](const Quantified& q) { self(self, q.body); },
                 },
                 g.node().value);
    };
    walk(walk, f);
    for (std::size_t k = 0; k < preds.size(); ++k) {
      ASSERT_EQ(preds[k], cyclic_name(k, 'A'));
    }
  }
  EXPECT_EQ(cyclic_name(0, 'A'), "A");
  EXPECT_EQ(cyclic_name(25, 'A'), "Z");
  EXPECT_EQ(cyclic_name(26, 'A'), "A1");
  EXPECT_EQ(cyclic_name(53, 'a'), "b2");
}

TEST(Generator, SameSeedSameFormula) {
  const auto cfg = window(4, 10);
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    Rng a(seed), b(seed);
    EXPECT_EQ(sample_standard(cfg, a), sample_standard(cfg, b));
    EXPECT_EQ(sample_nested(cfg, a), sample_nested(cfg, b));
  }
}

TEST(Corpus, UniqueCountAndDeterministic) {
  GenerationConfig cfg = window(4, 10);
  cfg.count = 3071;
  cfg.seed = 7;
  const auto corpus = generate_corpus(cfg);
  ASSERT_EQ(corpus.size(), 3071u);
  std::set<std::string> texts;
  for (const auto& g : corpus) {
    texts.insert(g.text);
    EXPECT_EQ(g.text, render(g.formula));
    const int d = structural_depth(g.formula);
    EXPECT_TRUE(d >= 4 && d <= 10);
    if (g.grammar == Grammar::Standard) {
      EXPECT_FALSE(testing::any_formula_argument(g.formula));
    }
  }
  EXPECT_EQ(texts.size(), 3071u);

  const auto again = generate_corpus(cfg);
  ASSERT_EQ(again.size(), corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(again[i].text, corpus[i].text);
}

TEST(Corpus, Singleton) {
  GenerationConfig cfg = window(4, 10);
  cfg.count = 1;
  EXPECT_EQ(generate_corpus(cfg).size(), 1u);
}

TEST(Corpus, BothGrammarsBalanced) {
  GenerationConfig cfg = window(4, 10);
  cfg.count = 10000;
  cfg.seed = 1;
  int standard = 0;
  for (const auto& g : generate_corpus(cfg)) standard += g.grammar == Grammar::Standard;
  EXPECT_NEAR(standard, 5000, 500);

  cfg.count = 100;
  int nested = 0;
  for (const auto& g : generate_corpus(cfg)) nested += g.grammar == Grammar::Nested;
  EXPECT_GE(nested, 1);
  EXPECT_LE(nested, 99);
}

TEST(Corpus, QuantifierDepthWindow) {
  GenerationConfig cfg = window(4, 10);
  cfg.count = 300;
  cfg.min_qd = 2;
  cfg.max_qd = 3;
  for (const auto& g : generate_corpus(cfg)) {
    const int qd = quantifier_depth(g.formula);
    EXPECT_GE(qd, 2);
    EXPECT_LE(qd, 3);
  }
}

TEST(Corpus, OverConstrainedConfigIsReported) {
  // Only A(a), A(a,a) and A(a,b) exist at depth one.
  GenerationConfig cfg = window(1, 1);
  cfg.grammar = Grammar::Standard;
  cfg.count = 3;
  EXPECT_EQ(generate_corpus(cfg).size(), 3u);
  cfg.count = 4;
  EXPECT_THROW(generate_corpus(cfg), ExhaustedSampling);
}

TEST(Corpus, InvalidBoundsAreRejected) {
  EXPECT_THROW(generate_corpus(window(5, 4)), DepthUnreachable);
  EXPECT_THROW(generate_corpus(window(0, 4)), DepthUnreachable);
  GenerationConfig cfg = window(1, 3);
  cfg.min_qd = 3;
  EXPECT_THROW(generate_corpus(cfg), DepthUnreachable);
  cfg = window(4, 10);
  cfg.count = 0;
  EXPECT_THROW(generate_corpus(cfg), ConfigError);
  // Usage-class errors.
  try {
    generate_corpus(window(5, 4));
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_usage());
  }
}

}  // namespace
}  // namespace folforge
