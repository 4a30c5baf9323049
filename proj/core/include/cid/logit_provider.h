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

#ifndef CID_LOGIT_PROVIDER_H_
#define CID_LOGIT_PROVIDER_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/core_math.h"

namespace cid {

// Source of next-token logits. Implementations must be deterministic (same
// prefix, bitwise-identical logits) and safe to call from several threads.
class LogitProvider {
 public:
  virtual ~LogitProvider() = default;

  virtual std::size_t vocab_size() const = 0;

  // Raw logits for the token following `prefix`. No floor is applied here.
  virtual absl::StatusOr<std::vector<double>> Logits(
      std::span<const TokenId> prefix) const = 0;

  // Stable identifier recorded in transcripts, e.g. "toy:copy-ngram/...".
  virtual std::string Identity() const = 0;
};

}  // namespace cid

#endif  // CID_LOGIT_PROVIDER_H_
