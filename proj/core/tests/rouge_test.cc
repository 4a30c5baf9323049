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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace cid {
namespace {

std::vector<std::string> Words(std::initializer_list<const char*> w) {
  return {w.begin(), w.end()};
}

// Plain recursive LCS used as an independent check on short inputs.
std::size_t LcsRecursive(const std::vector<TokenId>& a, std::size_t i,
                         const std::vector<TokenId>& b, std::size_t j) {
  if (i == a.size() || j == b.size()) return 0;
  if (a[i] == b[j]) return 1 + LcsRecursive(a, i + 1, b, j + 1);
  return std::max(LcsRecursive(a, i + 1, b, j), LcsRecursive(a, i, b, j + 1));
}

TEST(RougeTest, IdenticalSequencesScoreOne) {
  auto s = Words({"the", "cat", "sat"});
  EXPECT_DOUBLE_EQ(RougeLF1(s, s), 1.0);
}

TEST(RougeTest, DisjointAndEmptyScoreZero) {
  auto a = Words({"a", "b"});
  auto b = Words({"c", "d"});
  std::vector<std::string> empty;
  EXPECT_EQ(RougeLF1(a, b), 0.0);
  EXPECT_EQ(RougeLF1(empty, a), 0.0);
  EXPECT_EQ(RougeLF1(a, empty), 0.0);
  EXPECT_EQ(RougeLF1(empty, empty), 0.0);
}

TEST(RougeTest, KnownValue) {
  // LCS("the cat sat on the mat", "the cat lay on a mat") = the cat on mat.
  auto cand = Words({"the", "cat", "sat", "on", "the", "mat"});
  auto ref = Words({"the", "cat", "lay", "on", "a", "mat"});
  EXPECT_EQ(LcsLength(cand, ref), 4u);
  EXPECT_DOUBLE_EQ(RougeLF1(cand, ref), 2.0 * (4.0 / 6) * (4.0 / 6) / (8.0 / 6));
  // Unequal lengths: P = 2/2, R = 2/6, F = 2PR/(P+R) = 1/2.
  auto shorter = Words({"cat", "mat"});
  EXPECT_DOUBLE_EQ(RougeLF1(shorter, ref), 0.5);
}

TEST(RougeTest, SymmetricF1) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<TokenId> tok(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenId> a(rng() % 9), b(rng() % 9);
    for (TokenId& t : a) t = tok(rng);
    for (TokenId& t : b) t = tok(rng);
    EXPECT_EQ(LcsLength(a, b), LcsRecursive(a, 0, b, 0));
    EXPECT_DOUBLE_EQ(RougeLF1(a, b), RougeLF1(b, a));
    const double f = RougeLF1(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

}  // namespace
}  // namespace cid
