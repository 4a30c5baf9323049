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

#ifndef CID_TOY_LM_H_
#define CID_TOY_LM_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/logit_provider.h"
#include "cid/vocab.h"
#include "json.hpp"

namespace cid {

struct ToyLmParams {
  int order = 2;             // n-gram history length k
  double alpha = 0.1;        // additive smoothing of the base table
  double copy_weight = 0.5;  // gamma, mixture weight of the copy channel
  int min_match = 2;         // shortest suffix match that triggers copying
  double copy_alpha = 0.01;  // additive smoothing of the copy distribution

  absl::Status Validate() const;
};

// Additively smoothed n-gram model mixed with a longest-suffix copy channel:
//
//   p(v | prefix) = (1 - gamma) * P_base(v | last k) + gamma * P_copy(v | prefix)
//
// P_copy pools the tokens that followed every earlier occurrence of the
// longest suffix (length >= min_match) of the prefix; with no such match it
// falls back to P_base. Every token keeps nonzero mass, so PMI is finite.
// Immutable after construction; Logits() is safe to call concurrently.
class CopyNgramModel final : public LogitProvider {
 public:
  static absl::StatusOr<CopyNgramModel> Train(
      Vocab vocab, std::span<const std::vector<TokenId>> corpus,
      ToyLmParams params);

  // Whitespace-tokenized documents; every token must be in `vocab`.
  static absl::StatusOr<CopyNgramModel> TrainFromText(
      Vocab vocab, std::span<const std::string> documents, ToyLmParams params);

  std::size_t vocab_size() const override { return vocab_.size(); }
  absl::StatusOr<std::vector<double>> Logits(
      std::span<const TokenId> prefix) const override;
  std::string Identity() const override;

  std::vector<double> BaseDistribution(std::span<const TokenId> prefix) const;
  // Copy-channel distribution; equals BaseDistribution when nothing matches.
  std::vector<double> CopyDistribution(std::span<const TokenId> prefix) const;
  // Length of the longest earlier-occurring suffix of `prefix` (0 if none).
  static int LongestSuffixMatch(std::span<const TokenId> prefix,
                                std::vector<TokenId>* continuations = nullptr);

  const Vocab& vocab() const { return vocab_; }
  const ToyLmParams& params() const { return params_; }

  nlohmann::ordered_json ToJson() const;
  static absl::StatusOr<CopyNgramModel> FromJson(const nlohmann::ordered_json& doc);

  static constexpr const char* kSchema = "cid.toy_lm";
  static constexpr int kSchemaVersion = 1;

 private:
  struct Row {
    std::map<TokenId, std::int64_t> counts;
    std::int64_t total = 0;
  };

  CopyNgramModel(Vocab vocab, ToyLmParams params)
      : vocab_(std::move(vocab)), params_(params) {}

  std::vector<double> Smoothed(const Row& row, double alpha) const;
  void Count(std::span<const TokenId> doc);

  Vocab vocab_;
  ToyLmParams params_;
  std::map<std::vector<TokenId>, Row> history_rows_;
  Row unigram_;
};

}  // namespace cid

#endif  // CID_TOY_LM_H_
