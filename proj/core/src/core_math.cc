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

#include "cid/core_math.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace cid {
namespace {

absl::Status CheckFinite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-finite logit at index ", i, ": ", values[i]));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckSameVocab(const LogitVector& post, const LogitVector& prior) {
  if (post.vocab_size() != prior.vocab_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("vocab size mismatch: ", post.vocab_size(), " vs ",
                     prior.vocab_size()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LogitVector> LogitVector::Create(std::vector<double> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("logit vector must be non-empty");
  }
  if (absl::Status s = CheckFinite(values); !s.ok()) return s;
  return LogitVector(std::move(values));
}

absl::StatusOr<LogitVector> LogitVector::CreateFloored(
    std::vector<double> values, double floor) {
  if (!std::isfinite(floor)) {
    return absl::InvalidArgumentError("logit floor must be finite");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    double& v = values[i];
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid logit at index ", i, ": ", v));
    }
    v = std::max(v, floor);
  }
  return Create(std::move(values));
}

absl::StatusOr<ProbDist> ProbDist::Create(std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("distribution must be non-empty");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError("probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities sum to ", total));
  }
  return ProbDist(std::move(probs));
}

ProbDist ProbDist::FromLogProbs(std::span<const double> log_probs) {
  std::vector<double> probs(log_probs.size());
  std::transform(log_probs.begin(), log_probs.end(), probs.begin(),
                 [](double lp) { return std::exp(lp); });
  return ProbDist(std::move(probs));
}

double PmiVector::MaxAbs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double PmiVector::Max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double PmiVector::Min() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

absl::Status ValidateLambdaTau(double lambda, double tau) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must be finite and >= 0, got ", lambda));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tau must be finite and > 0, got ", tau));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> LogSoftmax(std::span<const double> logits,
                                               double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    return absl::InvalidArgumentError(absl::StrCat("tau must be > 0, got ", tau));
  }
  if (logits.empty()) {
    return absl::InvalidArgumentError("logit vector must be non-empty");
  }
  if (absl::Status s = CheckFinite(logits); !s.ok()) return s;

  std::vector<double> out(logits.size());
  double max_scaled = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = logits[i] / tau;
    max_scaled = std::max(max_scaled, out[i]);
  }
  double sum = 0.0;
  for (double& v : out) {
    v -= max_scaled;
    sum += std::exp(v);
  }
  // sum >= 1 because the maximal entry contributes exp(0).
  const double log_sum = std::log(sum);
  for (double& v : out) v -= log_sum;
  return out;
}

absl::StatusOr<PmiVector> Pmi(const LogitVector& post, const LogitVector& prior,
                              double tau) {
  if (absl::Status s = CheckSameVocab(post, prior); !s.ok()) return s;
  absl::StatusOr<std::vector<double>> lp_post = LogSoftmax(post.values(), tau);
  if (!lp_post.ok()) return lp_post.status();
  absl::StatusOr<std::vector<double>> lp_prior = LogSoftmax(prior.values(), tau);
  if (!lp_prior.ok()) return lp_prior.status();

  PmiVector pmi{.values = std::move(*lp_post), .tau = tau};
  for (std::size_t i = 0; i < pmi.values.size(); ++i) {
    pmi.values[i] -= (*lp_prior)[i];
  }
  return pmi;
}

absl::StatusOr<std::vector<double>> CidLogDistribution(
    const LogitVector& post, const LogitVector& prior, double lambda,
    double tau) {
  if (absl::Status s = ValidateLambdaTau(lambda, tau); !s.ok()) return s;
  if (absl::Status s = CheckSameVocab(post, prior); !s.ok()) return s;

  std::vector<double> mixed(post.vocab_size());
  const double prior_weight = 1.0 - lambda;
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    mixed[i] = lambda * post[i] + prior_weight * prior[i];
  }
  return LogSoftmax(mixed, tau);
}

absl::StatusOr<ProbDist> CidDistribution(const LogitVector& post,
                                         const LogitVector& prior,
                                         double lambda, double tau) {
  absl::StatusOr<std::vector<double>> logp =
      CidLogDistribution(post, prior, lambda, tau);
  if (!logp.ok()) return logp.status();
  return ProbDist::FromLogProbs(*logp);
}

absl::StatusOr<double> ContextInfluence(std::span<const double> logp_with,
                                        std::span<const double> logp_without,
                                        TokenId token) {
  if (logp_with.size() != logp_without.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("vocab size mismatch: ", logp_with.size(), " vs ",
                     logp_without.size()));
  }
  if (token < 0 || static_cast<std::size_t>(token) >= logp_with.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("token id ", token, " outside vocab of size ",
                     logp_with.size()));
  }
  return std::abs(logp_with[token] - logp_without[token]);
}

double InfluenceBound(double pmi_at_token, double lambda) {
  return std::abs(lambda * pmi_at_token);
}

double PmiRangeBound(const PmiVector& pmi, double lambda) {
  return lambda * (pmi.Max() - pmi.Min());
}

double TotalVariation(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::min(p.size(), q.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::abs(p[i] - q[i]);
  for (std::size_t i = n; i < p.size(); ++i) total += std::abs(p[i]);
  for (std::size_t i = n; i < q.size(); ++i) total += std::abs(q[i]);
  return 0.5 * total;
}

}  // namespace cid
