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
#include <cstdio>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"

namespace cid {
namespace {

absl::Status CheckIds(std::span<const TokenId> ids, std::size_t vocab_size) {
  for (TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("token id ", id, " not in vocabulary of size ",
                       vocab_size));
    }
  }
  return absl::OkStatus();
}

// FNV-1a; used only to fingerprint serialized models.
std::uint64_t Fingerprint(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

absl::Status ToyLmParams::Validate() const {
  if (order < 1) return absl::InvalidArgumentError("order must be >= 1");
  if (!(alpha > 0.0)) return absl::InvalidArgumentError("alpha must be > 0");
  if (!(copy_weight >= 0.0 && copy_weight < 1.0)) {
    return absl::InvalidArgumentError("copy weight must lie in [0, 1)");
  }
  if (min_match < 1) return absl::InvalidArgumentError("min match must be >= 1");
  if (!(copy_alpha > 0.0)) {
    return absl::InvalidArgumentError("copy alpha must be > 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<CopyNgramModel> CopyNgramModel::Train(
    Vocab vocab, std::span<const std::vector<TokenId>> corpus,
    ToyLmParams params) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  if (vocab.size() == 0) return absl::InvalidArgumentError("empty vocabulary");
  if (corpus.empty()) return absl::InvalidArgumentError("empty training corpus");
  CopyNgramModel model(std::move(vocab), params);
  for (const std::vector<TokenId>& doc : corpus) {
    if (absl::Status s = CheckIds(doc, model.vocab_.size()); !s.ok()) return s;
    model.Count(doc);
  }
  return model;
}

absl::StatusOr<CopyNgramModel> CopyNgramModel::TrainFromText(
    Vocab vocab, std::span<const std::string> documents, ToyLmParams params) {
  std::vector<std::vector<TokenId>> corpus;
  corpus.reserve(documents.size());
  for (const std::string& doc : documents) {
    absl::StatusOr<std::vector<TokenId>> ids = vocab.Encode(doc);
    if (!ids.ok()) return ids.status();
    if (!ids->empty()) corpus.push_back(*std::move(ids));
  }
  return Train(std::move(vocab), corpus, params);
}

void CopyNgramModel::Count(std::span<const TokenId> doc) {
  const auto k = static_cast<std::size_t>(params_.order);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    ++unigram_.counts[doc[i]];
    ++unigram_.total;
    if (i >= k) {
      Row& row = history_rows_[std::vector<TokenId>(doc.begin() + (i - k),
                                                    doc.begin() + i)];
      ++row.counts[doc[i]];
      ++row.total;
    }
  }
}

std::vector<double> CopyNgramModel::Smoothed(const Row& row,
                                             double alpha) const {
  const double v = static_cast<double>(vocab_.size());
  const double denom = static_cast<double>(row.total) + alpha * v;
  std::vector<double> probs(vocab_.size(), alpha / denom);
  for (const auto& [token, count] : row.counts) {
    probs[token] = (static_cast<double>(count) + alpha) / denom;
  }
  return probs;
}

std::vector<double> CopyNgramModel::BaseDistribution(
    std::span<const TokenId> prefix) const {
  const auto k = static_cast<std::size_t>(params_.order);
  if (prefix.size() < k) return Smoothed(unigram_, params_.alpha);
  auto it = history_rows_.find(
      std::vector<TokenId>(prefix.end() - static_cast<std::ptrdiff_t>(k),
                           prefix.end()));
  if (it == history_rows_.end()) return Smoothed(Row{}, params_.alpha);
  return Smoothed(it->second, params_.alpha);
}

int CopyNgramModel::LongestSuffixMatch(std::span<const TokenId> prefix,
                                       std::vector<TokenId>* continuations) {
  const std::size_t n = prefix.size();
  std::size_t best = 0;
  if (continuations != nullptr) continuations->clear();
  // Candidate occurrences end at j and are followed by prefix[j + 1].
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::size_t len = 0;
    while (len <= j && prefix[j - len] == prefix[n - 1 - len]) ++len;
    if (len == 0) continue;
    if (len > best) {
      best = len;
      if (continuations != nullptr) continuations->assign(1, prefix[j + 1]);
    } else if (len == best && continuations != nullptr) {
      continuations->push_back(prefix[j + 1]);
    }
  }
  return static_cast<int>(best);
}

std::vector<double> CopyNgramModel::CopyDistribution(
    std::span<const TokenId> prefix) const {
  std::vector<TokenId> continuations;
  const int match = LongestSuffixMatch(prefix, &continuations);
  if (match < params_.min_match) return BaseDistribution(prefix);
  Row row;
  for (TokenId t : continuations) ++row.counts[t];
  row.total = static_cast<std::int64_t>(continuations.size());
  return Smoothed(row, params_.copy_alpha);
}

absl::StatusOr<std::vector<double>> CopyNgramModel::Logits(
    std::span<const TokenId> prefix) const {
  if (absl::Status s = CheckIds(prefix, vocab_.size()); !s.ok()) return s;
  const std::vector<double> base = BaseDistribution(prefix);
  const std::vector<double> copy = CopyDistribution(prefix);
  const double gamma = params_.copy_weight;
  std::vector<double> logits(base.size());
  for (std::size_t v = 0; v < base.size(); ++v) {
    logits[v] = std::log((1.0 - gamma) * base[v] + gamma * copy[v]);
  }
  return logits;
}

std::string CopyNgramModel::Identity() const {
  return absl::StrFormat("toy:copy-ngram:%016x", Fingerprint(ToJson().dump()));
}

nlohmann::ordered_json CopyNgramModel::ToJson() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [history, row] : history_rows_) {
    nlohmann::ordered_json next = nlohmann::ordered_json::array();
    for (const auto& [token, count] : row.counts) next.push_back({token, count});
    rows.push_back({{"history", history}, {"next", next}});
  }
  nlohmann::ordered_json unigram = nlohmann::ordered_json::array();
  for (const auto& [token, count] : unigram_.counts) {
    unigram.push_back({token, count});
  }
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["version"] = kSchemaVersion;
  doc["params"] = {{"order", params_.order},
                   {"alpha", params_.alpha},
                   {"copy_weight", params_.copy_weight},
                   {"min_match", params_.min_match},
                   {"copy_alpha", params_.copy_alpha}};
  doc["vocab"] = vocab_.tokens();
  doc["unigram"] = std::move(unigram);
  doc["ngrams"] = std::move(rows);
  return doc;
}

absl::StatusOr<CopyNgramModel> CopyNgramModel::FromJson(
    const nlohmann::ordered_json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kSchema ||
        doc.at("version").get<int>() != kSchemaVersion) {
      return absl::InvalidArgumentError("unsupported toy model schema");
    }
    const nlohmann::ordered_json& p = doc.at("params");
    ToyLmParams params{.order = p.at("order").get<int>(),
                       .alpha = p.at("alpha").get<double>(),
                       .copy_weight = p.at("copy_weight").get<double>(),
                       .min_match = p.at("min_match").get<int>(),
                       .copy_alpha = p.at("copy_alpha").get<double>()};
    if (absl::Status s = params.Validate(); !s.ok()) return s;
    absl::StatusOr<Vocab> vocab =
        Vocab::FromTokens(doc.at("vocab").get<std::vector<std::string>>());
    if (!vocab.ok()) return vocab.status();

    CopyNgramModel model(*std::move(vocab), params);
    const std::size_t v = model.vocab_.size();
    auto read_row = [v](const nlohmann::ordered_json& entries,
                        Row& row) -> absl::Status {
      for (const nlohmann::ordered_json& e : entries) {
        const auto token = e.at(0).get<TokenId>();
        const auto count = e.at(1).get<std::int64_t>();
        if (token < 0 || static_cast<std::size_t>(token) >= v || count <= 0) {
          return absl::InvalidArgumentError("bad count entry in toy model");
        }
        row.counts[token] += count;
        row.total += count;
      }
      return absl::OkStatus();
    };
    if (absl::Status s = read_row(doc.at("unigram"), model.unigram_); !s.ok()) {
      return s;
    }
    for (const nlohmann::ordered_json& r : doc.at("ngrams")) {
      auto history = r.at("history").get<std::vector<TokenId>>();
      if (history.size() != static_cast<std::size_t>(params.order)) {
        return absl::InvalidArgumentError("history length differs from order");
      }
      if (absl::Status s = CheckIds(history, v); !s.ok()) return s;
      if (absl::Status s = read_row(r.at("next"), model.history_rows_[history]);
          !s.ok()) {
        return s;
      }
    }
    return model;
  } catch (const nlohmann::ordered_json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed toy model JSON: ", e.what()));
  }
}

}  // namespace cid
