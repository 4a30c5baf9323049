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

#ifndef CID_ROUGE_H_
#define CID_ROUGE_H_

#include <cstddef>
#include <span>
#include <string>

#include "cid/core_math.h"

namespace cid {

// Length of the longest common subsequence.
std::size_t LcsLength(std::span<const TokenId> a, std::span<const TokenId> b);
std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b);

// ROUGE-L F1 = 2PR / (P + R) with P = LCS/|candidate|, R = LCS/|reference|.
// Zero when either side is empty or nothing is shared.
double RougeLF1(std::span<const TokenId> candidate,
                std::span<const TokenId> reference);
double RougeLF1(std::span<const std::string> candidate,
                std::span<const std::string> reference);

}  // namespace cid

#endif  // CID_ROUGE_H_
