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

#include "cid/rouge.h"

#include <algorithm>
#include <vector>

namespace cid {
namespace {

template <typename T>
std::size_t Lcs(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double F1FromLcs(std::size_t lcs, std::size_t candidate, std::size_t reference) {
  if (lcs == 0 || candidate == 0 || reference == 0) return 0.0;
  const double p = static_cast<double>(lcs) / static_cast<double>(candidate);
  const double r = static_cast<double>(lcs) / static_cast<double>(reference);
  return 2.0 * p * r / (p + r);
}

}  // namespace

std::size_t LcsLength(std::span<const TokenId> a, std::span<const TokenId> b) {
  return Lcs(a, b);
}

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b) {
  return Lcs(a, b);
}

double RougeLF1(std::span<const TokenId> candidate,
                std::span<const TokenId> reference) {
  return F1FromLcs(Lcs(candidate, reference), candidate.size(),
                   reference.size());
}

double RougeLF1(std::span<const std::string> candidate,
                std::span<const std::string> reference) {
  return F1FromLcs(Lcs(candidate, reference), candidate.size(),
                   reference.size());
}

}  // namespace cid
