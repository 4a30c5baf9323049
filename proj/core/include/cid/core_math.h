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

// Pure numerical kernels for context-influence decoding.
//
// All log quantities use the natural logarithm. Every kernel is a pure
// function of its arguments and may be called concurrently.

#ifndef CID_CORE_MATH_H_
#define CID_CORE_MATH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace cid {

using TokenId = std::int32_t;

inline constexpr double kDefaultLogitFloor = -30.0;

// Unnormalized next-token scores over a fixed vocabulary. Entries are always
// finite.
class LogitVector {
 public:
  // Rejects empty input and any non-finite entry.
  static absl::StatusOr<LogitVector> Create(std::vector<double> values);

  // Provider-facing constructor: clamps every entry (including -inf) to at
  // least `floor`. NaN and +inf are still rejected.
  static absl::StatusOr<LogitVector> CreateFloored(std::vector<double> values,
                                                   double floor);

  std::span<const double> values() const { return values_; }
  std::size_t vocab_size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  explicit LogitVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

// A normalized distribution: entries >= 0 summing to one within 1e-9.
class ProbDist {
 public:
  static absl::StatusOr<ProbDist> Create(std::vector<double> probs);
  static ProbDist FromLogProbs(std::span<const double> log_probs);

  std::span<const double> probs() const { return probs_; }
  std::size_t vocab_size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  explicit ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// log p_post(v) - log p_prior(v), both distributions formed at `tau`.
struct PmiVector {
  std::vector<double> values;
  double tau = 1.0;

  double MaxAbs() const;
  double Max() const;
  double Min() const;
};

// Numerically stable log(softmax(logits / tau)).
absl::StatusOr<std::vector<double>> LogSoftmax(std::span<const double> logits,
                                               double tau);

absl::StatusOr<PmiVector> Pmi(const LogitVector& post, const LogitVector& prior,
                              double tau);

// Log-probabilities of softmax((lambda * post + (1 - lambda) * prior) / tau).
absl::StatusOr<std::vector<double>> CidLogDistribution(
    const LogitVector& post, const LogitVector& prior, double lambda,
    double tau);

absl::StatusOr<ProbDist> CidDistribution(const LogitVector& post,
                                         const LogitVector& prior,
                                         double lambda, double tau);

// |log p_with(token) - log p_without(token)|. Both inputs must be normalized
// log-probability vectors of equal length.
absl::StatusOr<double> ContextInfluence(std::span<const double> logp_with,
                                        std::span<const double> logp_without,
                                        TokenId token);

// |lambda * pmi|: the per-token influence bound asserted for plain CID.
double InfluenceBound(double pmi_at_token, double lambda);

// lambda * (max_v pmi(v) - min_v pmi(v)). Unlike InfluenceBound this holds
// for every token and every lambda >= 0, since
//   influence(y) = |lambda * pmi(y) - log E_prior[exp(lambda * pmi)]|
// and the log-mean-exp lies between lambda * min pmi and lambda * max pmi.
double PmiRangeBound(const PmiVector& pmi, double lambda);

double TotalVariation(std::span<const double> p, std::span<const double> q);

absl::Status ValidateLambdaTau(double lambda, double tau);

}  // namespace cid

#endif  // CID_CORE_MATH_H_
