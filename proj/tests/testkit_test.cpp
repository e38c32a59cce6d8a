#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ordstruct/measures.hpp"
#include "ordstruct/stats.hpp"
#include "ordstruct/testkit.hpp"

namespace ordstruct::testkit {
namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

TEST(SyntheticSource, IidEntropy) {
  EXPECT_DOUBLE_EQ(SyntheticSource::uniform(4).entropy_rate(), 2.0);
  EXPECT_NEAR(SyntheticSource::iid({0.5, 0.25, 0.25}).entropy_rate(), 1.5, 1e-15);
  EXPECT_THROW(SyntheticSource::iid({0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(SyntheticSource::iid({1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(SyntheticSource::uniform(0), std::invalid_argument);
}

TEST(SyntheticSource, MarkovStationaryAndEntropy) {
  const auto s = SyntheticSource::markov1({{0.9, 0.1}, {0.2, 0.8}});
  EXPECT_NEAR(s.probabilities()[0], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.entropy_rate(), 2.0 / 3.0 * h2(0.1) + 1.0 / 3.0 * h2(0.2), 1e-9);
  EXPECT_THROW(SyntheticSource::markov1({{0.9, 0.1}, {0.5, 0.4}}), std::invalid_argument);
  EXPECT_THROW(SyntheticSource::markov1({{1.0}, {1.0}}), std::invalid_argument);
}

TEST(SyntheticSource, DegenerateAndSymmetricSources) {
  const auto constant = SyntheticSource::uniform(1);
  EXPECT_EQ(constant.entropy_rate(), 0.0);
  EXPECT_EQ(generate(constant, 50, 1).chars, std::u32string(50, U'a'));
  const auto sym = SyntheticSource::markov1({{0.9, 0.1}, {0.1, 0.9}});
  EXPECT_NEAR(sym.entropy_rate(), h2(0.1), 1e-9);
  EXPECT_NEAR(sym.entropy_rate(), 0.469, 5e-4);
}

TEST(Generate, UniformFrequencies) {
  const auto seq = generate(SyntheticSource::uniform(4), 100000, 8);
  std::map<char32_t, double> freq;
  for (char32_t c : seq.chars) freq[c] += 1.0 / 100000.0;
  ASSERT_EQ(freq.size(), 4u);
  for (auto [c, f] : freq) EXPECT_NEAR(f, 0.25, 0.01);
}

TEST(SyntheticSource, PeriodicChainStillHasAStationaryDistribution) {
  const auto s = SyntheticSource::markov1({{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(s.probabilities()[0], 0.5, 1e-9);
  EXPECT_NEAR(s.entropy_rate(), 0.0, 1e-12);
}

TEST(Generate, DeterministicAndFrequenciesMatch) {
  const auto source = SyntheticSource::iid({0.5, 0.3, 0.2});
  const auto a = generate(source, 100000, 3);
  EXPECT_EQ(a.chars, generate(source, 100000, 3).chars);
  EXPECT_NE(a.chars, generate(source, 100000, 4).chars);
  std::map<char32_t, double> freq;
  for (char32_t c : a.chars) freq[c] += 1.0 / 100000.0;
  EXPECT_NEAR(freq[U'a'], 0.5, 0.01);
  EXPECT_NEAR(freq[U'b'], 0.3, 0.01);
  EXPECT_NEAR(freq[U'c'], 0.2, 0.01);
}

TEST(Generate, MarkovTransitionFrequencies) {
  const auto source = SyntheticSource::markov1({{0.9, 0.1}, {0.2, 0.8}});
  const auto seq = generate(source, 200000, 5);
  double aa = 0, a = 0;
  for (std::size_t i = 0; i + 1 < seq.chars.size(); ++i) {
    if (seq.chars[i] != U'a') continue;
    ++a;
    if (seq.chars[i + 1] == U'a') ++aa;
  }
  EXPECT_NEAR(aa / a, 0.9, 0.01);
}

TEST(Generate, SymbolsAndBooks) {
  EXPECT_EQ(symbol(0), U'a');
  EXPECT_EQ(symbol(25), U'z');
  EXPECT_EQ(symbol(26), char32_t{0xC0});
  const auto seq = generate(SyntheticSource::uniform(3), 25, 1);
  const Book b = to_book(seq, 10, 40);
  ASSERT_EQ(b.verses.size(), 3u);
  EXPECT_EQ(b.verses[2].text.size(), 5u);
  EXPECT_EQ(b.book_id, 40);
}

TEST(ToyCorpus, PositionalSentencesAreAgentVerbPatient) {
  ToyLanguageSpec spec;
  const Book b = render_toy_corpus(spec, 200, 1);
  ASSERT_EQ(b.verses.size(), 200u);
  EXPECT_EQ(b.translation_id, "toy_positional");
  for (const auto& v : b.verses) {
    const auto tokens = split_tokens(v.text);
    EXPECT_TRUE(tokens.size() == 3 || tokens.size() == 6);
    for (auto t : tokens) EXPECT_FALSE(t.ends_with(U"qo") || t.ends_with(U"zu"));
  }
}

TEST(ToyCorpus, AffixalMarksEveryArgument) {
  ToyLanguageSpec spec;
  spec.mode = RoleMarking::affixal;
  const Book b = render_toy_corpus(spec, 200, 1);
  EXPECT_EQ(b.translation_id, "toy_affixal");
  for (const auto& v : b.verses) {
    std::size_t agents = 0, patients = 0;
    const auto tokens = split_tokens(v.text);
    for (auto t : tokens) {
      agents += t.ends_with(U"qo");
      patients += t.ends_with(U"zu");
    }
    EXPECT_EQ(agents, tokens.size() / 3);
    EXPECT_EQ(patients, tokens.size() / 3);
  }
}

TEST(ToyCorpus, BothModesRenderTheSameMessages) {
  ToyLanguageSpec pos, aff;
  aff.mode = RoleMarking::affixal;
  const Book p = render_toy_corpus(pos, 100, 9);
  const Book a = render_toy_corpus(aff, 100, 9);
  ASSERT_EQ(p.verses.size(), a.verses.size());
  for (std::size_t i = 0; i < p.verses.size(); ++i) {
    EXPECT_EQ(split_tokens(p.verses[i].text).size(), split_tokens(a.verses[i].text).size());
  }
}

TEST(ToyCorpus, RejectsSuffixCollision) {
  ToyLanguageSpec spec;
  spec.mode = RoleMarking::affixal;
  spec.noun_roots = {U"ba", U"kaqo"};
  spec.verb_roots = {U"ti"};
  EXPECT_THROW(render_toy_corpus(spec, 10, 1), std::invalid_argument);
}

TEST(ToyCorpus, DirectionalityOfPenalties) {
  MeasureConfig config;
  config.replicates = 1;
  ToyLanguageSpec pos, aff;
  aff.mode = RoleMarking::affixal;
  std::vector<double> orders, structures;
  int order_wins = 0, structure_wins = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    config.master_seed = seed;
    const auto mp = measure_book(render_toy_corpus(pos, 1500, seed), config).front();
    const auto ma = measure_book(render_toy_corpus(aff, 1500, seed), config).front();
    order_wins += mp.d_order > ma.d_order;
    structure_wins += ma.d_structure > mp.d_structure;
    for (const auto* m : {&mp, &ma}) {
      orders.push_back(m->d_order);
      structures.push_back(m->d_structure);
    }
  }
  EXPECT_GE(order_wins, 4);
  EXPECT_GE(structure_wins, 4);
  EXPECT_LT(spearman(orders, structures), 0.0);
}

}  // namespace
}  // namespace ordstruct::testkit
