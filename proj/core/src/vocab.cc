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

#include "cid/vocab.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace cid {

std::vector<std::string> SplitWhitespace(std::string_view text) {
  return absl::StrSplit(absl::string_view(text.data(), text.size()),
                        absl::ByAnyChar(" \t\r\n"), absl::SkipEmpty());
}

absl::StatusOr<Vocab> Vocab::FromTokens(std::vector<std::string> tokens) {
  Vocab vocab;
  for (std::string& token : tokens) {
    if (token.empty()) {
      return absl::InvalidArgumentError("empty token in vocabulary");
    }
    if (vocab.Find(token).has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate token in vocabulary: ", token));
    }
    vocab.Add(token);
  }
  return vocab;
}

Vocab Vocab::FromTexts(std::span<const std::string> texts,
                       std::span<const std::string> specials) {
  Vocab vocab;
  for (const std::string& s : specials) vocab.Add(s);
  for (const std::string& text : texts) {
    for (const std::string& token : SplitWhitespace(text)) vocab.Add(token);
  }
  return vocab;
}

TokenId Vocab::Add(std::string_view token) {
  if (std::optional<TokenId> id = Find(token)) return *id;
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<TokenId> Vocab::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<std::vector<TokenId>> Vocab::Encode(std::string_view text) const {
  std::vector<TokenId> ids;
  for (const std::string& token : SplitWhitespace(text)) {
    std::optional<TokenId> id = Find(token);
    if (!id.has_value()) {
      return absl::NotFoundError(absl::StrCat("unknown token: '", token, "'"));
    }
    ids.push_back(*id);
  }
  return ids;
}

std::string Vocab::Decode(std::span<const TokenId> ids) const {
  std::vector<absl::string_view> parts;
  parts.reserve(ids.size());
  for (TokenId id : ids) parts.push_back(tokens_.at(id));
  return absl::StrJoin(parts, " ");
}

}  // namespace cid
