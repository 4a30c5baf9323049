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

#include "cid/corpus.h"

#include <fstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "cid/prompt.h"

namespace cid {

absl::StatusOr<std::vector<std::string>> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    absl::StripTrailingAsciiWhitespace(&line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

absl::StatusOr<TextCorpus> LoadTextCorpus(const std::string& context_path,
                                          const std::string& query_path,
                                          const std::string& reference_path) {
  TextCorpus corpus;
  absl::StatusOr<std::vector<std::string>> contexts = ReadLines(context_path);
  if (!contexts.ok()) return contexts.status();
  absl::StatusOr<std::vector<std::string>> queries = ReadLines(query_path);
  if (!queries.ok()) return queries.status();
  corpus.contexts = *std::move(contexts);
  corpus.queries = *std::move(queries);
  if (corpus.contexts.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(context_path, " has no contexts"));
  }
  if (corpus.queries.size() == 1) {
    corpus.queries.resize(corpus.contexts.size(), corpus.queries.front());
  }
  if (corpus.queries.size() != corpus.contexts.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        corpus.contexts.size(), " contexts but ", corpus.queries.size(), " queries"));
  }
  if (!reference_path.empty()) {
    absl::StatusOr<std::vector<std::string>> refs = ReadLines(reference_path);
    if (!refs.ok()) return refs.status();
    if (refs->size() != corpus.contexts.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          corpus.contexts.size(), " contexts but ", refs->size(), " references"));
    }
    corpus.references = *std::move(refs);
  }
  return corpus;
}

absl::StatusOr<std::vector<Example>> EncodeCorpus(const Vocab& vocab,
                                                  const TextCorpus& corpus) {
  std::vector<Example> out(corpus.contexts.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    absl::StatusOr<std::vector<TokenId>> context = vocab.Encode(corpus.contexts[i]);
    if (!context.ok()) return context.status();
    absl::StatusOr<std::vector<TokenId>> query = vocab.Encode(corpus.queries[i]);
    if (!query.ok()) return query.status();
    out[i].context = *std::move(context);
    out[i].query = *std::move(query);
    if (!corpus.references.empty()) {
      absl::StatusOr<std::vector<TokenId>> ref = vocab.Encode(corpus.references[i]);
      if (!ref.ok()) return ref.status();
      out[i].reference = *std::move(ref);
    }
  }
  return out;
}

absl::StatusOr<CopyNgramModel> BuildToyModel(const std::vector<std::string>& train,
                                             const std::vector<std::string>& extra,
                                             const ToyLmParams& params) {
  std::vector<std::string> texts = train;
  texts.insert(texts.end(), extra.begin(), extra.end());
  const std::vector<std::string> specials = {kDocumentHeader, kEmptyDocument};
  Vocab vocab = Vocab::FromTexts(texts, specials);
  return CopyNgramModel::TrainFromText(std::move(vocab), train, params);
}

}  // namespace cid
