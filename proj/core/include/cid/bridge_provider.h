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

#ifndef CID_BRIDGE_PROVIDER_H_
#define CID_BRIDGE_PROVIDER_H_

#include <cstdint>
#include <cstdio>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/logit_provider.h"
#include "json.hpp"

namespace cid {

// Client for an out-of-process model adapter speaking newline-delimited JSON
// over the child's stdin/stdout:
//
//   -> {"req_id": 7, "op": "logits", "payload": [15496, 11]}
//   <- {"req_id": 7, "result": {"logits": [...]}}      or
//   <- {"req_id": 7, "error": "..."}
//
// Ops: "info" (result: vocab_size, model), "encode" (payload: text; result:
// ids), "logits" (payload: ids; result: logits). Requests are strictly
// serial; a mutex serializes concurrent callers.
class BridgeProvider final : public LogitProvider {
 public:
  struct Info {
    std::size_t vocab_size = 0;
    std::string model;
  };

  // Runs `command` through /bin/sh and performs the info handshake.
  static absl::StatusOr<std::unique_ptr<BridgeProvider>> Launch(
      const std::string& command);

  ~BridgeProvider() override;
  BridgeProvider(const BridgeProvider&) = delete;
  BridgeProvider& operator=(const BridgeProvider&) = delete;

  std::size_t vocab_size() const override { return info_.vocab_size; }
  absl::StatusOr<std::vector<double>> Logits(
      std::span<const TokenId> prefix) const override;
  std::string Identity() const override { return "bridge:" + info_.model; }

  absl::StatusOr<std::vector<TokenId>> Encode(std::string_view text) const;
  const Info& info() const { return info_; }

  // One request/response exchange; returns the "result" member.
  absl::StatusOr<nlohmann::ordered_json> Call(
      std::string_view op, nlohmann::ordered_json payload) const;

  std::int64_t requests_sent() const;

 private:
  BridgeProvider(pid_t pid, std::FILE* to_child, std::FILE* from_child)
      : pid_(pid), to_child_(to_child), from_child_(from_child) {}

  pid_t pid_;
  std::FILE* to_child_;
  std::FILE* from_child_;
  Info info_;
  mutable std::mutex mu_;
  mutable std::int64_t next_req_id_ = 0;
};

}  // namespace cid

#endif  // CID_BRIDGE_PROVIDER_H_
