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

// Influence aggregation, n-gram attribution sweeps and ablation profiles.

#ifndef CID_ANALYSIS_H_
#define CID_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cid/decoder.h"
#include "cid/logit_provider.h"
#include "cid/prompt.h"

namespace cid {

// Pairwise (cascade) summation.
double PairwiseSum(std::span<const double> values);

// Sum of per-token influences.
double SequenceInfluence(const Transcript& transcript);

// Mean sequence influence, divided by the number of transcripts (one per
// context). Empty input is a domain error.
absl::StatusOr<double> CorpusAverage(std::span<const Transcript> transcripts);

struct WindowInfluence {
  std::size_t start = 0;
  double influence = 0.0;
};

struct StepSweep {
  int position = 0;
  TokenId token = 0;
  std::vector<WindowInfluence> windows;
  double max_influence = 0.0;
  std::size_t argmax_start = 0;  // lowest start among exact ties
};

struct SweepResult {
  std::size_t n = 0;
  std::size_t stride = 1;
  std::vector<StepSweep> steps;
};

struct SweepOptions {
  std::size_t n = 1;
  std::size_t stride = 1;
  // Upper bound on windows * steps.
  std::uint64_t compute_cap = std::uint64_t{1} << 22;
  int threads = 0;
};

// Removes every n-gram window of the context in turn and re-scores the
// already sampled token at each step. Generation itself is not redone: the
// transcript's tokens are kept and only the measurement branch loses the
// window. The removed-context distribution uses the transcript's lambda
// policy (re-selected per context for bounded transcripts).
absl::StatusOr<SweepResult> NgramSweep(const LogitProvider& provider,
                                       const PromptTemplate& prompt,
                                       const Transcript& transcript,
                                       const SweepOptions& options);

// Per context-token heat: max influence over windows covering the token,
// at `position` (1-based) or over all steps when absent.
std::vector<std::pair<std::size_t, double>> WindowHeatmap(
    const SweepResult& sweep, std::size_t context_size,
    std::optional<int> position = std::nullopt);

enum class ProfileAxis {
  kResponsePosition,
  kContextWindowPosition,
  kLambda,
  kTau,
  kContextSize,
  kNgramSize,
};

absl::StatusOr<ProfileAxis> ParseProfileAxis(std::string_view name);
std::string_view ProfileAxisName(ProfileAxis axis);

struct ProfilePoint {
  double axis_value = 0.0;
  double mean_influence = 0.0;
  std::size_t count = 0;
  std::optional<double> mean_rouge;
};

struct Profile {
  ProfileAxis axis = ProfileAxis::kResponsePosition;
  // How means were taken, e.g. "per-step" or "per-context".
  std::string aggregation;
  std::vector<ProfilePoint> points;
};

// Mean influence at each generation position across transcripts.
Profile PositionalProfile(std::span<const Transcript> transcripts);

// Mean influence per window start, averaged over steps and transcripts.
absl::StatusOr<Profile> ContextWindowProfile(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Transcript> transcripts, const SweepOptions& options);

enum class NgramAggregation {
  kPerStep,     // mean of per-step max over all steps of all transcripts
  kPerContext,  // per-transcript sum of per-step max, averaged over contexts
};

// For each window size n: influence of the most influential n-gram,
// aggregated as requested.
absl::StatusOr<Profile> NgramSizeProfile(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Transcript> transcripts, std::span<const std::size_t> sizes,
    NgramAggregation aggregation, const SweepOptions& options);

struct Example {
  std::vector<TokenId> query;
  std::vector<TokenId> context;
  std::vector<TokenId> reference;  // optional; empty disables ROUGE
};

struct AblationOptions {
  std::optional<PrivacyBudget> budget;
  int threads = 0;
};

// Decodes every example once per axis value (seed = base seed + example
// index) and reports mean sequence influence and, when references exist,
// mean ROUGE-L. Context-size truncates each context to its first `value`
// tokens.
absl::StatusOr<Profile> AblationSweep(const LogitProvider& provider,
                                      const PromptTemplate& prompt,
                                      std::span<const Example> corpus,
                                      ProfileAxis axis,
                                      std::span<const double> values,
                                      const DecodeConfig& base,
                                      const AblationOptions& options = {});

// Same decodes as AblationSweep, returned instead of summarized.
absl::StatusOr<std::vector<Transcript>> DecodeCorpus(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Example> corpus, const DecodeConfig& config,
    const AblationOptions& options = {});

}  // namespace cid

#endif  // CID_ANALYSIS_H_
