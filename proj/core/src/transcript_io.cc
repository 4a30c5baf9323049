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

#include "cid/transcript_io.h"

#include <istream>
#include <ostream>

#include "absl/strings/str_cat.h"

namespace cid {

using nlohmann::ordered_json;

ordered_json DecodeConfigToJson(const DecodeConfig& config) {
  ordered_json doc;
  doc["lambda"] = config.lambda;
  doc["tau"] = config.tau;
  doc["max_tokens"] = config.max_tokens;
  doc["seed"] = config.seed;
  doc["mode"] = config.mode == SamplingMode::kGreedy ? "greedy" : "sample";
  doc["logit_floor"] = config.logit_floor;
  doc["eos_token"] = config.eos_token.has_value() ? ordered_json(*config.eos_token)
                                                  : ordered_json(nullptr);
  return doc;
}

absl::StatusOr<DecodeConfig> DecodeConfigFromJson(const ordered_json& doc) {
  try {
    DecodeConfig config;
    config.lambda = doc.at("lambda").get<double>();
    config.tau = doc.at("tau").get<double>();
    config.max_tokens = doc.at("max_tokens").get<int>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode != "greedy" && mode != "sample") {
      return absl::InvalidArgumentError(absl::StrCat("unknown mode ", mode));
    }
    config.mode = mode == "greedy" ? SamplingMode::kGreedy : SamplingMode::kSample;
    config.logit_floor = doc.at("logit_floor").get<double>();
    if (!doc.at("eos_token").is_null()) {
      config.eos_token = doc.at("eos_token").get<TokenId>();
    }
    if (absl::Status s = config.Validate(); !s.ok()) return s;
    return config;
  } catch (const ordered_json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed decode config: ", e.what()));
  }
}

ordered_json TranscriptToJson(const Transcript& transcript,
                              const Vocab* vocab) {
  ordered_json doc;
  doc["schema"] = kTranscriptSchema;
  doc["version"] = kTranscriptSchemaVersion;
  doc["provider"] = transcript.provider;
  doc["seed"] = transcript.config.seed;
  doc["config"] = DecodeConfigToJson(transcript.config);
  if (transcript.budget.has_value()) {
    doc["budget"] = {{"epsilon", transcript.budget->epsilon},
                     {"lambda_max", transcript.budget->lambda_max}};
  } else {
    doc["budget"] = nullptr;
  }
  doc["query"] = transcript.query;
  doc["context"] = transcript.context;
  doc["generated"] = transcript.generated;
  if (vocab != nullptr) {
    doc["generated_text"] = vocab->Decode(transcript.generated);
  }
  doc["valid"] = transcript.valid;
  doc["error"] = transcript.error;
  ordered_json records = ordered_json::array();
  for (const InfluenceRecord& r : transcript.records) {
    ordered_json rec;
    rec["t"] = r.position;
    rec["token"] = r.token;
    rec["pmi"] = r.pmi;
    rec["influence"] = r.influence;
    rec["bound"] = r.bound;
    rec["lambda"] = r.lambda_used;
    rec["within_bound"] = r.within_bound;
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc;
}

absl::StatusOr<Transcript> TranscriptFromJson(const ordered_json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kTranscriptSchema ||
        doc.at("version").get<int>() != kTranscriptSchemaVersion) {
      return absl::InvalidArgumentError("unsupported transcript schema");
    }
    absl::StatusOr<DecodeConfig> config = DecodeConfigFromJson(doc.at("config"));
    if (!config.ok()) return config.status();
    Transcript t;
    t.config = *config;
    t.provider = doc.at("provider").get<std::string>();
    if (!doc.at("budget").is_null()) {
      t.budget = PrivacyBudget{
          .epsilon = doc["budget"].at("epsilon").get<double>(),
          .lambda_max = doc["budget"].at("lambda_max").get<double>()};
    }
    t.query = doc.at("query").get<std::vector<TokenId>>();
    t.context = doc.at("context").get<std::vector<TokenId>>();
    t.generated = doc.at("generated").get<std::vector<TokenId>>();
    t.valid = doc.at("valid").get<bool>();
    t.error = doc.at("error").get<std::string>();
    for (const ordered_json& rec : doc.at("records")) {
      t.records.push_back(InfluenceRecord{
          .position = rec.at("t").get<int>(),
          .token = rec.at("token").get<TokenId>(),
          .pmi = rec.at("pmi").get<double>(),
          .influence = rec.at("influence").get<double>(),
          .bound = rec.at("bound").get<double>(),
          .lambda_used = rec.at("lambda").get<double>(),
          .within_bound = rec.at("within_bound").get<bool>(),
      });
    }
    if (t.records.size() != t.generated.size()) {
      return absl::InvalidArgumentError("record count differs from generation");
    }
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      if (t.records[i].position != static_cast<int>(i) + 1 ||
          t.records[i].token != t.generated[i]) {
        return absl::InvalidArgumentError("records out of order");
      }
    }
    return t;
  } catch (const ordered_json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed transcript: ", e.what()));
  }
}

void WriteTranscriptsJsonl(std::ostream& out,
                           std::span<const Transcript> transcripts,
                           const Vocab* vocab) {
  for (const Transcript& t : transcripts) {
    out << TranscriptToJson(t, vocab).dump() << '\n';
  }
}

absl::StatusOr<std::vector<Transcript>> ReadTranscriptsJsonl(std::istream& in) {
  std::vector<Transcript> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json doc = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": invalid JSON"));
    }
    absl::StatusOr<Transcript> t = TranscriptFromJson(doc);
    if (!t.ok()) {
      return absl::Status(t.status().code(),
                          absl::StrCat("line ", line_no, ": ",
                                       t.status().message()));
    }
    out.push_back(*std::move(t));
  }
  return out;
}

}  // namespace cid
