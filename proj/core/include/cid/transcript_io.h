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

#ifndef CID_TRANSCRIPT_IO_H_
#define CID_TRANSCRIPT_IO_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/decoder.h"
#include "cid/vocab.h"
#include "json.hpp"

namespace cid {

inline constexpr const char* kTranscriptSchema = "cid.transcript";
inline constexpr int kTranscriptSchemaVersion = 1;

nlohmann::ordered_json DecodeConfigToJson(const DecodeConfig& config);
absl::StatusOr<DecodeConfig> DecodeConfigFromJson(
    const nlohmann::ordered_json& doc);

// Field order is fixed so that serialized transcripts are byte-stable.
// When `vocab` is given, token strings are added alongside the ids.
nlohmann::ordered_json TranscriptToJson(const Transcript& transcript,
                                        const Vocab* vocab = nullptr);
absl::StatusOr<Transcript> TranscriptFromJson(const nlohmann::ordered_json& doc);

// One transcript per line.
void WriteTranscriptsJsonl(std::ostream& out,
                           std::span<const Transcript> transcripts,
                           const Vocab* vocab = nullptr);
absl::StatusOr<std::vector<Transcript>> ReadTranscriptsJsonl(std::istream& in);

}  // namespace cid

#endif  // CID_TRANSCRIPT_IO_H_
