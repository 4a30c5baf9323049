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

// Autoregressive context-influence decoding with per-token instrumentation.

#ifndef CID_DECODER_H_
#define CID_DECODER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cid/core_math.h"
#include "cid/logit_provider.h"
#include "cid/prompt.h"

namespace cid {

enum class SamplingMode { kSample, kGreedy };

struct DecodeConfig {
  double lambda = 1.0;
  double tau = 1.0;
  int max_tokens = 50;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::kSample;
  double logit_floor = kDefaultLogitFloor;
  std::optional<TokenId> eos_token;

  absl::Status Validate() const;
};

struct PrivacyBudget {
  double epsilon = 1.0;
  double lambda_max = 1.0;

  absl::Status Validate() const;
};

// Per-step interpolation weight: fixed, or selected from the PMI vector so
// that |lambda * pmi(v)| <= epsilon / 2 for every token v.
struct LambdaPolicy {
  double fixed_lambda = 1.0;
  std::optional<PrivacyBudget> budget;

  double Select(const PmiVector& pmi) const;
};

// min(lambda_max, epsilon / (2 max_v |pmi(v)|)); lambda_max when PMI is zero.
double BoundedLambda(const PmiVector& pmi, const PrivacyBudget& budget);

// Contiguous subset of the context, the removal unit for influence queries.
struct ContextSpan {
  std::size_t start = 0;
  std::size_t length = 0;

  static absl::StatusOr<ContextSpan> Create(std::size_t start,
                                            std::size_t length,
                                            std::size_t context_size);

  friend bool operator==(const ContextSpan&, const ContextSpan&) = default;
};

// The context with `span` deleted and the remainder concatenated.
std::vector<TokenId> RemoveSpan(std::span<const TokenId> context,
                                const ContextSpan& span);

struct InfluenceRecord {
  int position = 0;  // 1-based generation step
  TokenId token = 0;
  double pmi = 0.0;
  double influence = 0.0;
  double bound = 0.0;  // |lambda_used * pmi|
  double lambda_used = 0.0;
  // influence <= bound + 1e-9. Not guaranteed for 0 < lambda < 1 or
  // lambda > 1; see PmiRangeBound for a bound that always holds.
  bool within_bound = true;
};

inline constexpr double kBoundTolerance = 1e-9;

struct Transcript {
  std::vector<TokenId> query;
  std::vector<TokenId> context;
  std::vector<TokenId> generated;
  std::vector<InfluenceRecord> records;
  DecodeConfig config;
  std::optional<PrivacyBudget> budget;
  std::string provider;
  // False when the provider failed mid-decode; the prefix is kept.
  bool valid = true;
  std::string error;
};

// Everything the decoder computes for one step given the generated prefix.
struct StepDistributions {
  LogitVector posterior;
  LogitVector prior;
  PmiVector pmi;
  double lambda = 0.0;
  std::vector<double> log_cid;    // CID log-probabilities at tau
  std::vector<double> log_prior;  // prior log-probabilities at tau
};

// Queries the provider with and without `context` (the no-context prompt
// when it is empty) and forms the CID distribution under `policy`.
absl::StatusOr<StepDistributions> ComputeStep(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const TokenId> query, std::span<const TokenId> context,
    std::span<const TokenId> generated, const LambdaPolicy& policy,
    double tau, double logit_floor);

// CID log-probabilities only; skips the posterior query when the context is
// empty.
absl::StatusOr<std::vector<double>> CidLogProbs(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const TokenId> query, std::span<const TokenId> context,
    std::span<const TokenId> generated, const LambdaPolicy& policy,
    double tau, double logit_floor);

absl::StatusOr<Transcript> Decode(const LogitProvider& provider,
                                  const PromptTemplate& prompt,
                                  std::span<const TokenId> query,
                                  std::span<const TokenId> context,
                                  const DecodeConfig& config);

// Bounded CID: lambda is re-selected every step from the full PMI vector.
absl::StatusOr<Transcript> BoundedDecode(const LogitProvider& provider,
                                         const PromptTemplate& prompt,
                                         std::span<const TokenId> query,
                                         std::span<const TokenId> context,
                                         const PrivacyBudget& budget,
                                         const DecodeConfig& config);

LambdaPolicy PolicyFor(const Transcript& transcript);

enum class RemovalFamily {
  kNone,             // only the empty subset
  kFullContext,      // D itself
  kSingleTokens,     // every {d_i}
  kContiguousSpans,  // every contiguous span, all lengths
};

absl::StatusOr<RemovalFamily> ParseRemovalFamily(std::string_view name);
std::string_view RemovalFamilyName(RemovalFamily family);
std::vector<ContextSpan> EnumerateFamily(RemovalFamily family,
                                         std::size_t context_size);

struct AuditOptions {
  RemovalFamily family = RemovalFamily::kContiguousSpans;
  // Steps along a reference transcript; 1 audits only the first token.
  int steps = 1;
  // Upper bound on |family| * vocab_size * steps.
  std::uint64_t compute_cap = std::uint64_t{1} << 26;
  int threads = 0;  // 0: hardware concurrency
};

struct AuditWitness {
  ContextSpan span;
  TokenId token = 0;
  int step = 0;
};

struct AuditReport {
  double max_loss = 0.0;
  std::optional<AuditWitness> witness;
  std::uint64_t evaluations = 0;
  int steps_audited = 0;
  std::size_t family_size = 0;
};

// Exhaustive privacy-loss audit:
//   max over D' in family, token y, step t of
//   |log p(y | D, ...) - log p(y | D \ D', ...)|
// where each side uses the lambda the policy selects for its own context
// (the fixed config lambda when `budget` is absent). Steps beyond the first
// follow a reference transcript decoded with the same policy.
absl::StatusOr<AuditReport> PrivacyAudit(const LogitProvider& provider,
                                         const PromptTemplate& prompt,
                                         std::span<const TokenId> query,
                                         std::span<const TokenId> context,
                                         const std::optional<PrivacyBudget>& budget,
                                         const DecodeConfig& config,
                                         const AuditOptions& options);

}  // namespace cid

#endif  // CID_DECODER_H_
