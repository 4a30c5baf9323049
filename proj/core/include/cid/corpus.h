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

#ifndef CID_CORPUS_H_
#define CID_CORPUS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/analysis.h"
#include "cid/toy_lm.h"

namespace cid {

// Non-empty lines of a UTF-8 text file, without trailing whitespace.
absl::StatusOr<std::vector<std::string>> ReadLines(const std::string& path);

// Parallel text files, one example per line.
struct TextCorpus {
  std::vector<std::string> contexts;
  std::vector<std::string> queries;     // one line is broadcast to all contexts
  std::vector<std::string> references;  // empty, or one per context
};

absl::StatusOr<TextCorpus> LoadTextCorpus(const std::string& context_path,
                                          const std::string& query_path,
                                          const std::string& reference_path = "");

absl::StatusOr<std::vector<Example>> EncodeCorpus(const Vocab& vocab,
                                                  const TextCorpus& corpus);

// Trains the toy model on `train`; the vocabulary also covers `extra` texts
// and the prompt template tokens.
absl::StatusOr<CopyNgramModel> BuildToyModel(const std::vector<std::string>& train,
                                             const std::vector<std::string>& extra,
                                             const ToyLmParams& params = {});

}  // namespace cid

#endif  // CID_CORPUS_H_
