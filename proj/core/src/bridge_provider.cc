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

#include "cid/bridge_provider.h"

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include "absl/strings/str_cat.h"

namespace cid {

using nlohmann::ordered_json;

absl::StatusOr<std::unique_ptr<BridgeProvider>> BridgeProvider::Launch(
    const std::string& command) {
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (pipe(in_pipe) != 0) return absl::InternalError("pipe() failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return absl::InternalError("pipe() failed");
  }
  const pid_t pid = fork();
  if (pid < 0) return absl::InternalError("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  // A dead bridge must surface as a write error, not kill this process.
  std::signal(SIGPIPE, SIG_IGN);

  std::unique_ptr<BridgeProvider> bridge(new BridgeProvider(
      pid, fdopen(in_pipe[1], "w"), fdopen(out_pipe[0], "r")));
  absl::StatusOr<ordered_json> info = bridge->Call("info", nullptr);
  if (!info.ok()) {
    return absl::UnavailableError(
        absl::StrCat("bridge handshake failed: ", info.status().message()));
  }
  try {
    bridge->info_.vocab_size = info->at("vocab_size").get<std::size_t>();
    bridge->info_.model = info->at("model").get<std::string>();
  } catch (const ordered_json::exception& e) {
    return absl::UnavailableError(absl::StrCat("bad info response: ", e.what()));
  }
  if (bridge->info_.vocab_size == 0) {
    return absl::UnavailableError("bridge reported an empty vocabulary");
  }
  return bridge;
}

BridgeProvider::~BridgeProvider() {
  if (to_child_ != nullptr) std::fclose(to_child_);
  if (from_child_ != nullptr) std::fclose(from_child_);
  int status = 0;
  waitpid(pid_, &status, 0);
}

std::int64_t BridgeProvider::requests_sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_req_id_;
}

absl::StatusOr<ordered_json> BridgeProvider::Call(std::string_view op,
                                                  ordered_json payload) const {
  std::lock_guard<std::mutex> lock(mu_);
  const std::int64_t req_id = next_req_id_++;
  ordered_json request;
  request["req_id"] = req_id;
  request["op"] = op;
  request["payload"] = std::move(payload);
  const std::string line = request.dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), to_child_) != line.size() ||
      std::fflush(to_child_) != 0) {
    return absl::UnavailableError("bridge closed its input");
  }

  std::string response;
  for (int c = std::fgetc(from_child_); c != EOF && c != '\n';
       c = std::fgetc(from_child_)) {
    response.push_back(static_cast<char>(c));
  }
  if (response.empty()) {
    return absl::UnavailableError("bridge closed its output");
  }
  ordered_json doc = ordered_json::parse(response, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::UnavailableError("bridge sent malformed JSON");
  }
  if (!doc.contains("req_id") || doc["req_id"] != req_id) {
    return absl::UnavailableError(
        absl::StrCat("bridge response req_id mismatch (sent ", req_id, ")"));
  }
  if (doc.contains("error")) {
    return absl::UnavailableError(
        absl::StrCat("bridge error: ", doc["error"].dump()));
  }
  if (!doc.contains("result")) {
    return absl::UnavailableError("bridge response lacks result");
  }
  return std::move(doc["result"]);
}

absl::StatusOr<std::vector<TokenId>> BridgeProvider::Encode(
    std::string_view text) const {
  absl::StatusOr<ordered_json> result = Call("encode", std::string(text));
  if (!result.ok()) return result.status();
  try {
    const ordered_json& ids = result->is_object() ? result->at("ids") : *result;
    return ids.get<std::vector<TokenId>>();
  } catch (const ordered_json::exception& e) {
    return absl::UnavailableError(absl::StrCat("bad encode response: ", e.what()));
  }
}

absl::StatusOr<std::vector<double>> BridgeProvider::Logits(
    std::span<const TokenId> prefix) const {
  absl::StatusOr<ordered_json> result =
      Call("logits", std::vector<TokenId>(prefix.begin(), prefix.end()));
  if (!result.ok()) return result.status();
  std::vector<double> logits;
  try {
    const ordered_json& values =
        result->is_object() ? result->at("logits") : *result;
    logits.reserve(values.size());
    for (const ordered_json& v : values) {
      // The wire carries raw model logits; -inf may arrive as null.
      logits.push_back(v.is_null() ? -std::numeric_limits<double>::infinity()
                                   : v.get<double>());
    }
  } catch (const ordered_json::exception& e) {
    return absl::UnavailableError(absl::StrCat("bad logits response: ", e.what()));
  }
  if (logits.size() != info_.vocab_size) {
    return absl::UnavailableError(
        absl::StrCat("bridge returned ", logits.size(), " logits, vocab is ",
                     info_.vocab_size));
  }
  return logits;
}

}  // namespace cid
