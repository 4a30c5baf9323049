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

#ifndef CID_PROMPT_H_
#define CID_PROMPT_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/core_math.h"
#include "cid/vocab.h"

namespace cid {

// Token-level prompt layout:
//
//   header, document-or-placeholder, separator, query, generated
//
// An empty document is rendered as the placeholder (the "Document: ." form),
// so the no-context prompt and the prompt built from a fully removed context
// are the same token sequence.
struct PromptTemplate {
  std::vector<TokenId> header;
  std::vector<TokenId> empty_document;
  std::vector<TokenId> separator;

  std::vector<TokenId> Build(std::span<const TokenId> context,
                             std::span<const TokenId> query,
                             std::span<const TokenId> generated) const;

  // No-context prompt used for the prior branch.
  std::vector<TokenId> BuildPrior(std::span<const TokenId> query,
                                  std::span<const TokenId> generated) const {
    return Build({}, query, generated);
  }
};

inline constexpr const char* kDocumentHeader = "Document:";
inline constexpr const char* kEmptyDocument = ".";

// "Document:" header with "." placeholder and no separator tokens (a blank
// line carries no whitespace tokens).
absl::StatusOr<PromptTemplate> DocumentPromptTemplate(const Vocab& vocab);

}  // namespace cid

#endif  // CID_PROMPT_H_
