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

#ifndef CID_VOCAB_H_
#define CID_VOCAB_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/core_math.h"

namespace cid {

// Dense bidirectional token <-> id map. Ids are 0..size()-1 in insertion
// order.
class Vocab {
 public:
  Vocab() = default;

  static absl::StatusOr<Vocab> FromTokens(std::vector<std::string> tokens);

  // Collects whitespace-separated tokens from every text, in first-seen
  // order, after `specials`.
  static Vocab FromTexts(std::span<const std::string> texts,
                         std::span<const std::string> specials = {});

  // Returns the existing id or appends a new token.
  TokenId Add(std::string_view token);

  std::optional<TokenId> Find(std::string_view token) const;
  const std::string& Token(TokenId id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  absl::StatusOr<std::vector<TokenId>> Encode(std::string_view text) const;
  std::string Decode(std::span<const TokenId> ids) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
};

std::vector<std::string> SplitWhitespace(std::string_view text);

}  // namespace cid

#endif  // CID_VOCAB_H_
