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

#include "cid/prompt.h"

#include "absl/strings/str_cat.h"

namespace cid {

std::vector<TokenId> PromptTemplate::Build(
    std::span<const TokenId> context, std::span<const TokenId> query,
    std::span<const TokenId> generated) const {
  std::vector<TokenId> out;
  const std::span<const TokenId> body =
      context.empty() ? std::span<const TokenId>(empty_document) : context;
  out.reserve(header.size() + body.size() + separator.size() + query.size() +
              generated.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), body.begin(), body.end());
  out.insert(out.end(), separator.begin(), separator.end());
  out.insert(out.end(), query.begin(), query.end());
  out.insert(out.end(), generated.begin(), generated.end());
  return out;
}

absl::StatusOr<PromptTemplate> DocumentPromptTemplate(const Vocab& vocab) {
  std::optional<TokenId> header = vocab.Find(kDocumentHeader);
  std::optional<TokenId> empty = vocab.Find(kEmptyDocument);
  if (!header.has_value() || !empty.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("vocabulary lacks prompt tokens '", kDocumentHeader,
                     "' and '", kEmptyDocument, "'"));
  }
  return PromptTemplate{.header = {*header}, .empty_document = {*empty}};
}

}  // namespace cid
