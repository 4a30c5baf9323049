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

#include "cid/decoder.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"

namespace cid {
namespace {

// 53 random mantissa bits from one mt19937_64 draw; identical on every
// platform, unlike std::uniform_real_distribution.
double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TokenId SampleToken(std::span<const double> log_probs, std::mt19937_64& rng) {
  const double u = UniformUnit(rng);
  double cumulative = 0.0;
  TokenId last_positive = 0;
  for (std::size_t v = 0; v < log_probs.size(); ++v) {
    const double p = std::exp(log_probs[v]);
    if (p <= 0.0) continue;
    last_positive = static_cast<TokenId>(v);
    cumulative += p;
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

TokenId ArgmaxToken(std::span<const double> log_probs) {
  // max_element returns the first maximum: ties resolve to the lowest id.
  return static_cast<TokenId>(
      std::max_element(log_probs.begin(), log_probs.end()) - log_probs.begin());
}

absl::StatusOr<LogitVector> QueryProvider(const LogitProvider& provider,
                                          std::span<const TokenId> prompt,
                                          double floor) {
  absl::StatusOr<std::vector<double>> raw = provider.Logits(prompt);
  if (!raw.ok()) return raw.status();
  if (raw->size() != provider.vocab_size()) {
    return absl::DataLossError(
        absl::StrCat("provider returned ", raw->size(), " logits, expected ",
                     provider.vocab_size()));
  }
  return LogitVector::CreateFloored(*std::move(raw), floor);
}

absl::StatusOr<Transcript> RunDecode(const LogitProvider& provider,
                                     const PromptTemplate& prompt,
                                     std::span<const TokenId> query,
                                     std::span<const TokenId> context,
                                     const DecodeConfig& config,
                                     const std::optional<PrivacyBudget>& budget) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (budget.has_value()) {
    if (absl::Status s = budget->Validate(); !s.ok()) return s;
  }
  if (config.eos_token.has_value() &&
      (*config.eos_token < 0 ||
       static_cast<std::size_t>(*config.eos_token) >= provider.vocab_size())) {
    return absl::InvalidArgumentError("end-of-sequence token outside vocab");
  }

  Transcript transcript{
      .query = {query.begin(), query.end()},
      .context = {context.begin(), context.end()},
      .config = config,
      .budget = budget,
      .provider = provider.Identity(),
  };
  const LambdaPolicy policy{.fixed_lambda = config.lambda, .budget = budget};
  std::mt19937_64 rng(config.seed);

  for (int t = 1; t <= config.max_tokens; ++t) {
    absl::StatusOr<StepDistributions> step =
        ComputeStep(provider, prompt, query, context, transcript.generated,
                    policy, config.tau, config.logit_floor);
    if (!step.ok()) {
      transcript.valid = false;
      transcript.error = std::string(step.status().ToString());
      break;
    }
    const TokenId token = config.mode == SamplingMode::kGreedy
                              ? ArgmaxToken(step->log_cid)
                              : SampleToken(step->log_cid, rng);
    InfluenceRecord record{
        .position = t,
        .token = token,
        .pmi = step->pmi.values[token],
        .influence = std::abs(step->log_cid[token] - step->log_prior[token]),
        .bound = InfluenceBound(step->pmi.values[token], step->lambda),
        .lambda_used = step->lambda,
    };
    record.within_bound = record.influence <= record.bound + kBoundTolerance;
    transcript.records.push_back(record);
    transcript.generated.push_back(token);
    if (config.eos_token.has_value() && token == *config.eos_token) break;
  }
  return transcript;
}

}  // namespace

absl::Status DecodeConfig::Validate() const {
  if (absl::Status s = ValidateLambdaTau(lambda, tau); !s.ok()) return s;
  if (max_tokens < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("max_tokens must be >= 1, got ", max_tokens));
  }
  if (!std::isfinite(logit_floor)) {
    return absl::InvalidArgumentError("logit floor must be finite");
  }
  return absl::OkStatus();
}

absl::Status PrivacyBudget::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", epsilon));
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda_max must be finite and > 0, got ", lambda_max));
  }
  return absl::OkStatus();
}

double BoundedLambda(const PmiVector& pmi, const PrivacyBudget& budget) {
  const double max_abs = pmi.MaxAbs();
  if (max_abs == 0.0) return budget.lambda_max;
  return std::min(budget.lambda_max, budget.epsilon / (2.0 * max_abs));
}

double LambdaPolicy::Select(const PmiVector& pmi) const {
  return budget.has_value() ? BoundedLambda(pmi, *budget) : fixed_lambda;
}

absl::StatusOr<ContextSpan> ContextSpan::Create(std::size_t start,
                                                std::size_t length,
                                                std::size_t context_size) {
  if (length == 0 || start > context_size || length > context_size - start) {
    return absl::OutOfRangeError(
        absl::StrCat("span [", start, ", ", start + length,
                     ") invalid for context of ", context_size, " tokens"));
  }
  return ContextSpan{start, length};
}

std::vector<TokenId> RemoveSpan(std::span<const TokenId> context,
                                const ContextSpan& span) {
  std::vector<TokenId> out;
  const std::size_t start = std::min(span.start, context.size());
  const std::size_t end = std::min(span.start + span.length, context.size());
  out.reserve(context.size() - (end - start));
  out.insert(out.end(), context.begin(), context.begin() + start);
  out.insert(out.end(), context.begin() + end, context.end());
  return out;
}

absl::StatusOr<StepDistributions> ComputeStep(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const TokenId> query, std::span<const TokenId> context,
    std::span<const TokenId> generated, const LambdaPolicy& policy,
    double tau, double logit_floor) {
  absl::StatusOr<LogitVector> prior = QueryProvider(
      provider, prompt.BuildPrior(query, generated), logit_floor);
  if (!prior.ok()) return prior.status();
  absl::StatusOr<LogitVector> posterior =
      context.empty() ? prior
                      : QueryProvider(provider,
                                      prompt.Build(context, query, generated),
                                      logit_floor);
  if (!posterior.ok()) return posterior.status();

  absl::StatusOr<PmiVector> pmi = Pmi(*posterior, *prior, tau);
  if (!pmi.ok()) return pmi.status();
  const double lambda = policy.Select(*pmi);
  absl::StatusOr<std::vector<double>> log_cid =
      CidLogDistribution(*posterior, *prior, lambda, tau);
  if (!log_cid.ok()) return log_cid.status();
  absl::StatusOr<std::vector<double>> log_prior = LogSoftmax(prior->values(), tau);
  if (!log_prior.ok()) return log_prior.status();

  return StepDistributions{
      .posterior = *std::move(posterior),
      .prior = *std::move(prior),
      .pmi = *std::move(pmi),
      .lambda = lambda,
      .log_cid = *std::move(log_cid),
      .log_prior = *std::move(log_prior),
  };
}

absl::StatusOr<std::vector<double>> CidLogProbs(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const TokenId> query, std::span<const TokenId> context,
    std::span<const TokenId> generated, const LambdaPolicy& policy,
    double tau, double logit_floor) {
  if (context.empty()) {
    absl::StatusOr<LogitVector> prior = QueryProvider(
        provider, prompt.BuildPrior(query, generated), logit_floor);
    if (!prior.ok()) return prior.status();
    return LogSoftmax(prior->values(), tau);
  }
  absl::StatusOr<StepDistributions> step = ComputeStep(
      provider, prompt, query, context, generated, policy, tau, logit_floor);
  if (!step.ok()) return step.status();
  return std::move(step->log_cid);
}

absl::StatusOr<Transcript> Decode(const LogitProvider& provider,
                                  const PromptTemplate& prompt,
                                  std::span<const TokenId> query,
                                  std::span<const TokenId> context,
                                  const DecodeConfig& config) {
  return RunDecode(provider, prompt, query, context, config, std::nullopt);
}

absl::StatusOr<Transcript> BoundedDecode(const LogitProvider& provider,
                                         const PromptTemplate& prompt,
                                         std::span<const TokenId> query,
                                         std::span<const TokenId> context,
                                         const PrivacyBudget& budget,
                                         const DecodeConfig& config) {
  return RunDecode(provider, prompt, query, context, config, budget);
}

LambdaPolicy PolicyFor(const Transcript& transcript) {
  return LambdaPolicy{.fixed_lambda = transcript.config.lambda,
                      .budget = transcript.budget};
}

}  // namespace cid
