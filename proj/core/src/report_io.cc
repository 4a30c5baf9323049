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

#include "cid/report_io.h"

#include <charconv>
#include <ostream>

namespace cid {

using nlohmann::ordered_json;

namespace {

void WriteCsvPreamble(std::ostream& out, const char* schema,
                      const ordered_json& run_config) {
  out << "# schema=" << schema << "/" << kReportSchemaVersion << '\n';
  out << "# config=" << run_config.dump() << '\n';
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

ordered_json ProfileToJson(const Profile& profile, const ordered_json& run_config) {
  ordered_json doc;
  doc["schema"] = "cid.profile";
  doc["version"] = kReportSchemaVersion;
  doc["config"] = run_config;
  doc["axis"] = ProfileAxisName(profile.axis);
  doc["aggregation"] = profile.aggregation;
  ordered_json points = ordered_json::array();
  for (const ProfilePoint& p : profile.points) {
    ordered_json row;
    row["axis_value"] = p.axis_value;
    row["mean_influence"] = p.mean_influence;
    row["count"] = p.count;
    row["mean_rouge_l"] =
        p.mean_rouge.has_value() ? ordered_json(*p.mean_rouge) : ordered_json(nullptr);
    points.push_back(std::move(row));
  }
  doc["points"] = std::move(points);
  return doc;
}

void WriteProfileCsv(std::ostream& out, const Profile& profile,
                     const ordered_json& run_config) {
  WriteCsvPreamble(out, "cid.profile", run_config);
  out << "axis,aggregation,axis_value,mean_influence,count,mean_rouge_l\n";
  for (const ProfilePoint& p : profile.points) {
    out << ProfileAxisName(profile.axis) << ',' << profile.aggregation << ','
        << FormatDouble(p.axis_value) << ',' << FormatDouble(p.mean_influence)
        << ',' << p.count << ','
        << (p.mean_rouge.has_value() ? FormatDouble(*p.mean_rouge) : "") << '\n';
  }
}

ordered_json SweepToJson(const SweepResult& sweep, const ordered_json& run_config) {
  ordered_json doc;
  doc["schema"] = "cid.sweep";
  doc["version"] = kReportSchemaVersion;
  doc["config"] = run_config;
  doc["n"] = sweep.n;
  doc["stride"] = sweep.stride;
  ordered_json steps = ordered_json::array();
  for (const StepSweep& s : sweep.steps) {
    ordered_json step;
    step["t"] = s.position;
    step["token"] = s.token;
    step["max_influence"] = s.max_influence;
    step["argmax_start"] = s.argmax_start;
    ordered_json windows = ordered_json::array();
    for (const WindowInfluence& w : s.windows) {
      windows.push_back({w.start, w.influence});
    }
    step["windows"] = std::move(windows);
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  return doc;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& sweep,
                   const ordered_json& run_config) {
  WriteCsvPreamble(out, "cid.sweep", run_config);
  out << "t,token,n,window_start,influence,is_step_max\n";
  for (const StepSweep& s : sweep.steps) {
    for (const WindowInfluence& w : s.windows) {
      out << s.position << ',' << s.token << ',' << sweep.n << ',' << w.start
          << ',' << FormatDouble(w.influence) << ','
          << (w.start == s.argmax_start ? 1 : 0) << '\n';
    }
  }
}

ordered_json HeatmapToJson(const std::vector<std::pair<std::size_t, double>>& heat) {
  ordered_json out = ordered_json::array();
  for (const auto& [index, value] : heat) out.push_back({index, value});
  return out;
}

ordered_json AuditReportToJson(const AuditReport& report,
                               const ordered_json& run_config) {
  ordered_json doc;
  doc["schema"] = "cid.audit";
  doc["version"] = kReportSchemaVersion;
  doc["config"] = run_config;
  doc["max_loss"] = report.max_loss;
  if (report.witness.has_value()) {
    doc["witness"] = {{"span_start", report.witness->span.start},
                      {"span_length", report.witness->span.length},
                      {"token", report.witness->token},
                      {"step", report.witness->step}};
  } else {
    doc["witness"] = nullptr;
  }
  doc["family_size"] = report.family_size;
  doc["steps_audited"] = report.steps_audited;
  doc["evaluations"] = report.evaluations;
  return doc;
}

}  // namespace cid
