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

#ifndef CID_TESTS_TEST_UTIL_H_
#define CID_TESTS_TEST_UTIL_H_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cid/core_math.h"
#include "cid/logit_provider.h"
#include "cid/prompt.h"
#include "cid/toy_lm.h"
#include "gtest/gtest.h"

namespace cid::testing {

// Logits whose entries are uniform in [-scale, scale].
inline std::vector<double> RandomLogits(std::mt19937_64& rng, std::size_t n,
                                        double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

// Scale drawn log-uniformly from [1e-3, 1e4].
inline double RandomScale(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-3.0, 4.0);
  return std::pow(10.0, exponent(rng));
}

inline std::size_t RandomVocab(std::mt19937_64& rng, std::size_t lo = 8,
                               std::size_t hi = 512) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline LogitVector MustLogits(std::vector<double> v) {
  absl::StatusOr<LogitVector> l = LogitVector::Create(std::move(v));
  EXPECT_TRUE(l.ok()) << l.status();
  return *std::move(l);
}

template <typename T>
T Must(absl::StatusOr<T> v) {
  EXPECT_TRUE(v.ok()) << v.status();
  return *std::move(v);
}

// A small model with a generic grammar-like corpus. Context documents use
// the same vocabulary plus a few rare entity tokens absent from training.
inline CopyNgramModel SmallToyModel(ToyLmParams params = {}) {
  const std::vector<std::string> train = {
      "the cat saw the dog . the dog saw a bird .",
      "a man found the old house . the man left the city .",
      "the bird saw the old man near the house .",
      "a dog found a cat . the cat left .",
  };
  const std::vector<std::string> extra = {"ufo zeta met king tell me about"};
  std::vector<std::string> texts = train;
  texts.insert(texts.end(), extra.begin(), extra.end());
  Vocab vocab = Vocab::FromTexts(texts, std::vector<std::string>{
                                            kDocumentHeader, kEmptyDocument});
  return Must(CopyNgramModel::TrainFromText(std::move(vocab), train, params));
}

inline std::vector<TokenId> Ids(const Vocab& vocab, const std::string& text) {
  return Must(vocab.Encode(text));
}

// Deterministic provider returning a caller-chosen function of the prefix.
class FunctionProvider final : public LogitProvider {
 public:
  using Fn = std::function<absl::StatusOr<std::vector<double>>(
      std::span<const TokenId>)>;
  FunctionProvider(std::size_t vocab, Fn fn) : vocab_(vocab), fn_(std::move(fn)) {}

  std::size_t vocab_size() const override { return vocab_; }
  absl::StatusOr<std::vector<double>> Logits(
      std::span<const TokenId> prefix) const override {
    return fn_(prefix);
  }
  std::string Identity() const override { return "test:function"; }

 private:
  std::size_t vocab_;
  Fn fn_;
};

}  // namespace cid::testing

#endif  // CID_TESTS_TEST_UTIL_H_
