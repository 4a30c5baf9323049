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

#ifndef CID_REPORT_IO_H_
#define CID_REPORT_IO_H_

#include <iosfwd>
#include <string>

#include "cid/analysis.h"
#include "cid/decoder.h"
#include "json.hpp"

namespace cid {

inline constexpr int kReportSchemaVersion = 1;

// Every report embeds `run_config` (the resolved configuration that produced
// it) and a schema tag. CSV files carry both as leading "# " comment lines.

nlohmann::ordered_json ProfileToJson(const Profile& profile,
                                     const nlohmann::ordered_json& run_config);
void WriteProfileCsv(std::ostream& out, const Profile& profile,
                     const nlohmann::ordered_json& run_config);

nlohmann::ordered_json SweepToJson(const SweepResult& sweep,
                                   const nlohmann::ordered_json& run_config);
// One row per (step, window).
void WriteSweepCsv(std::ostream& out, const SweepResult& sweep,
                   const nlohmann::ordered_json& run_config);

// [[token index, influence], ...]
nlohmann::ordered_json HeatmapToJson(
    const std::vector<std::pair<std::size_t, double>>& heat);

nlohmann::ordered_json AuditReportToJson(
    const AuditReport& report, const nlohmann::ordered_json& run_config);

// Shortest round-trip decimal form, so reruns produce identical bytes.
std::string FormatDouble(double v);

}  // namespace cid

#endif  // CID_REPORT_IO_H_
