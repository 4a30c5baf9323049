// Copyright 2026 The CID Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cid/toy_lm.h"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cid {
namespace {

using ::cid::testing::Ids;
using ::cid::testing::Must;
using ::testing::DoubleNear;
using ::testing::ElementsAre;

// Golden model from tests/oracles/toy_lm_oracle.py.
CopyNgramModel GoldenModel() {
  Vocab vocab = Must(Vocab::FromTokens({"a", "b", "c", "d"}));
  const std::vector<std::string> docs = {"a b c a b d", "b c d a"};
  return Must(CopyNgramModel::TrainFromText(
      std::move(vocab), docs,
      {.order = 2, .alpha = 0.1, .copy_weight = 0.5, .min_match = 2,
       .copy_alpha = 0.01}));
}

TEST(VocabTest, RoundTripAndErrors) {
  Vocab vocab = Vocab::FromTexts(std::vector<std::string>{"x y  x\tz"});
  EXPECT_EQ(vocab.size(), 3u);
  EXPECT_EQ(vocab.Decode(Ids(vocab, "z y x")), "z y x");
  for (TokenId id = 0; id < 3; ++id) EXPECT_EQ(*vocab.Find(vocab.Token(id)), id);
  EXPECT_EQ(vocab.Encode("x w").status().code(), absl::StatusCode::kNotFound);
  EXPECT_FALSE(Vocab::FromTokens({"a", "a"}).ok());
}

TEST(CopyNgramModelTest, BigramCountsWithAddOneSmoothing) {
  Vocab vocab = Must(Vocab::FromTokens({"a", "b"}));
  const std::vector<std::string> docs = {"a b a b"};
  CopyNgramModel model = Must(CopyNgramModel::TrainFromText(
      vocab, docs, {.order = 1, .alpha = 1.0, .copy_weight = 0.0}));
  std::vector<double> p = model.BaseDistribution(Ids(model.vocab(), "a"));
  EXPECT_DOUBLE_EQ(p[1], 0.75);
  EXPECT_DOUBLE_EQ(p[0], 0.25);
}

TEST(CopyNgramModelTest, ShortPrefixBacksOffToUnigram) {
  CopyNgramModel model = GoldenModel();
  // Unigram counts a:3 b:3 c:2 d:2 over 10 tokens.
  std::vector<double> p = model.BaseDistribution(Ids(model.vocab(), "a"));
  EXPECT_THAT(p, ElementsAre(DoubleNear(3.1 / 10.4, 1e-15), DoubleNear(3.1 / 10.4, 1e-15),
                             DoubleNear(2.1 / 10.4, 1e-15), DoubleNear(2.1 / 10.4, 1e-15)));
  EXPECT_EQ(model.BaseDistribution({}), p);
}

TEST(CopyNgramModelTest, LargeAlphaApproachesUniform) {
  Vocab vocab = Must(Vocab::FromTokens({"a", "b", "c"}));
  const std::vector<std::string> docs = {"a b a b a c"};
  CopyNgramModel model = Must(CopyNgramModel::TrainFromText(
      vocab, docs, {.order = 1, .alpha = 1e9, .copy_weight = 0.0}));
  for (double p : model.BaseDistribution(Ids(model.vocab(), "a"))) {
    EXPECT_NEAR(p, 1.0 / 3.0, 1e-8);
  }
}

TEST(CopyNgramModelTest, MatchesIndependentOracle) {
  CopyNgramModel model = GoldenModel();
  auto logits = [&](const std::string& text) {
    return Must(model.Logits(Ids(model.vocab(), text)));
  };
  constexpr double kTol = 1e-12;
  EXPECT_THAT(logits("a"),
              ElementsAre(DoubleNear(-1.2104036946562264, kTol),
                          DoubleNear(-1.2104036946562264, kTol),
                          DoubleNear(-1.5998684614179497, kTol),
                          DoubleNear(-1.5998684614179497, kTol)));
  EXPECT_THAT(logits("c d"),
              ElementsAre(DoubleNear(-0.2411620568168881, kTol),
                          DoubleNear(-2.6390573296152589, kTol),
                          DoubleNear(-2.6390573296152589, kTol),
                          DoubleNear(-2.6390573296152589, kTol)));
  EXPECT_THAT(logits("a b c a b"),
              ElementsAre(DoubleNear(-3.6635616461296463, kTol),
                          DoubleNear(-3.6635616461296463, kTol),
                          DoubleNear(-0.33583141634936359, kTol),
                          DoubleNear(-1.4525437466610913, kTol)));
  EXPECT_THAT(logits("b c d a b c"),
              ElementsAre(DoubleNear(-1.4525437466610913, kTol),
                          DoubleNear(-3.6635616461296463, kTol),
                          DoubleNear(-3.6635616461296463, kTol),
                          DoubleNear(-0.33583141634936359, kTol)));
}

TEST(CopyNgramModelTest, NoRepeatedSuffixFallsBackToBase) {
  CopyNgramModel model = GoldenModel();
  std::vector<TokenId> prefix = Ids(model.vocab(), "c d");
  std::vector<double> logits = Must(model.Logits(prefix));
  std::vector<double> base = model.BaseDistribution(prefix);
  for (std::size_t v = 0; v < base.size(); ++v) {
    EXPECT_DOUBLE_EQ(logits[v], std::log(base[v]));
  }
}

TEST(CopyNgramModelTest, CopiedContinuationGainsMass) {
  CopyNgramModel model = testing::SmallToyModel();
  const Vocab& vocab = model.vocab();
  std::vector<TokenId> prefix = Ids(vocab, "the ufo zeta saw the dog . the ufo");
  std::vector<double> logits = Must(model.Logits(prefix));
  const TokenId zeta = *vocab.Find("zeta");
  const double base = model.BaseDistribution(prefix)[zeta];
  ASSERT_LT(base, 1.0);
  EXPECT_GT(std::exp(logits[zeta]), base);

  std::vector<TokenId> conts;
  EXPECT_EQ(CopyNgramModel::LongestSuffixMatch(prefix, &conts), 2);
  EXPECT_THAT(conts, ElementsAre(zeta));
}

TEST(CopyNgramModelTest, LongestSuffixPoolsAllOccurrences) {
  std::vector<TokenId> prefix = {0, 1, 2, 0, 1, 3, 5, 0, 1};
  std::vector<TokenId> conts;
  EXPECT_EQ(CopyNgramModel::LongestSuffixMatch(prefix, &conts), 2);
  EXPECT_THAT(conts, ElementsAre(2, 3));
  EXPECT_EQ(CopyNgramModel::LongestSuffixMatch(std::vector<TokenId>{4}, &conts), 0);
  EXPECT_TRUE(conts.empty());
}

TEST(CopyNgramModelTest, DeterministicAndFullSupport) {
  CopyNgramModel model = testing::SmallToyModel();
  std::mt19937_64 rng(3);
  const auto v = static_cast<TokenId>(model.vocab_size());
  const ToyLmParams& p = model.params();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenId> prefix(std::uniform_int_distribution<int>(0, 40)(rng));
    for (TokenId& t : prefix) t = std::uniform_int_distribution<TokenId>(0, v - 1)(rng);
    std::vector<double> a = Must(model.Logits(prefix));
    std::vector<double> b = Must(model.Logits(prefix));
    EXPECT_EQ(a, b);
    for (double l : a) {
      EXPECT_TRUE(std::isfinite(l));
      // (1 - gamma) * alpha / (total + alpha |V|) with total <= corpus size.
      EXPECT_GT(std::exp(l), (1 - p.copy_weight) * p.alpha / (1000.0 + p.alpha * v));
    }
  }
}

TEST(CopyNgramModelTest, UnknownTokensRejected) {
  CopyNgramModel model = GoldenModel();
  EXPECT_FALSE(model.Logits(std::vector<TokenId>{0, 9}).ok());
  EXPECT_FALSE(model.Logits(std::vector<TokenId>{-1}).ok());
  Vocab vocab = Must(Vocab::FromTokens({"a"}));
  const std::vector<std::string> docs = {"a b"};
  EXPECT_EQ(CopyNgramModel::TrainFromText(vocab, docs, {}).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_FALSE(CopyNgramModel::TrainFromText(vocab, {}, {}).ok());
  EXPECT_FALSE(CopyNgramModel::TrainFromText(vocab, docs, {.copy_weight = 1.0}).ok());
}

TEST(CopyNgramModelTest, JsonRoundTripPreservesLogits) {
  CopyNgramModel model = testing::SmallToyModel();
  nlohmann::ordered_json doc = model.ToJson();
  EXPECT_EQ(doc["schema"], "cid.toy_lm");
  CopyNgramModel loaded = Must(CopyNgramModel::FromJson(
      nlohmann::ordered_json::parse(doc.dump())));
  EXPECT_EQ(loaded.Identity(), model.Identity());
  std::vector<TokenId> prefix = Ids(model.vocab(), "the cat saw the");
  EXPECT_EQ(Must(loaded.Logits(prefix)), Must(model.Logits(prefix)));

  doc["version"] = 99;
  EXPECT_FALSE(CopyNgramModel::FromJson(doc).ok());
}

}  // namespace
}  // namespace cid
