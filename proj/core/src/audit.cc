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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "cid/decoder.h"
#include "parallel.h"

namespace cid {

absl::StatusOr<RemovalFamily> ParseRemovalFamily(std::string_view name) {
  if (name == "none") return RemovalFamily::kNone;
  if (name == "full") return RemovalFamily::kFullContext;
  if (name == "tokens") return RemovalFamily::kSingleTokens;
  if (name == "spans") return RemovalFamily::kContiguousSpans;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown removal family '", std::string(name),
                   "' (expected none|full|tokens|spans)"));
}

std::string_view RemovalFamilyName(RemovalFamily family) {
  switch (family) {
    case RemovalFamily::kNone:
      return "none";
    case RemovalFamily::kFullContext:
      return "full";
    case RemovalFamily::kSingleTokens:
      return "tokens";
    case RemovalFamily::kContiguousSpans:
      return "spans";
  }
  return "unknown";
}

std::vector<ContextSpan> EnumerateFamily(RemovalFamily family,
                                         std::size_t context_size) {
  std::vector<ContextSpan> spans;
  if (context_size == 0) return spans;
  switch (family) {
    case RemovalFamily::kNone:
      break;
    case RemovalFamily::kFullContext:
      spans.push_back({0, context_size});
      break;
    case RemovalFamily::kSingleTokens:
      for (std::size_t i = 0; i < context_size; ++i) spans.push_back({i, 1});
      break;
    case RemovalFamily::kContiguousSpans:
      for (std::size_t len = 1; len <= context_size; ++len) {
        for (std::size_t i = 0; i + len <= context_size; ++i) {
          spans.push_back({i, len});
        }
      }
      break;
  }
  return spans;
}

absl::StatusOr<AuditReport> PrivacyAudit(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const TokenId> query, std::span<const TokenId> context,
    const std::optional<PrivacyBudget>& budget, const DecodeConfig& config,
    const AuditOptions& options) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (budget.has_value()) {
    if (absl::Status s = budget->Validate(); !s.ok()) return s;
  }
  if (options.steps < 1) {
    return absl::InvalidArgumentError("audit needs at least one step");
  }
  const std::vector<ContextSpan> family =
      EnumerateFamily(options.family, context.size());
  const std::uint64_t vocab = provider.vocab_size();
  const std::uint64_t required =
      static_cast<std::uint64_t>(family.size()) * vocab *
      static_cast<std::uint64_t>(options.steps);
  if (required > options.compute_cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "audit needs ", required, " token evaluations (", family.size(),
        " subsets x ", vocab, " tokens x ", options.steps,
        " steps); compute cap is ", options.compute_cap));
  }

  AuditReport report{.family_size = family.size()};
  if (family.empty()) return report;

  // Reference prefixes: step 1 has none; later steps follow one decode.
  std::vector<TokenId> reference;
  int steps = 1;
  if (options.steps > 1) {
    DecodeConfig ref_config = config;
    ref_config.max_tokens = options.steps - 1;
    absl::StatusOr<Transcript> t =
        budget.has_value()
            ? BoundedDecode(provider, prompt, query, context, *budget, ref_config)
            : Decode(provider, prompt, query, context, ref_config);
    if (!t.ok()) return t.status();
    if (!t->valid) return absl::UnavailableError(t->error);
    reference = t->generated;
    steps = 1 + static_cast<int>(reference.size());
  }

  const LambdaPolicy policy{.fixed_lambda = config.lambda, .budget = budget};

  std::vector<std::vector<double>> full(steps);
  std::vector<absl::Status> full_status(steps);
  internal::ParallelFor(steps, options.threads, [&](std::size_t s) {
    absl::StatusOr<std::vector<double>> lp = CidLogProbs(
        provider, prompt, query, context,
        std::span<const TokenId>(reference).first(s), policy, config.tau,
        config.logit_floor);
    if (lp.ok()) {
      full[s] = *std::move(lp);
    } else {
      full_status[s] = lp.status();
    }
  });
  for (const absl::Status& s : full_status) {
    if (!s.ok()) return s;
  }

  struct Cell {
    double loss = -1.0;
    TokenId token = 0;
    absl::Status status;
  };
  const std::size_t cells = static_cast<std::size_t>(steps) * family.size();
  std::vector<Cell> results(cells);
  internal::ParallelFor(cells, options.threads, [&](std::size_t idx) {
    const std::size_t s = idx / family.size();
    const ContextSpan& span = family[idx % family.size()];
    const std::vector<TokenId> reduced = RemoveSpan(context, span);
    absl::StatusOr<std::vector<double>> lp = CidLogProbs(
        provider, prompt, query, reduced,
        std::span<const TokenId>(reference).first(s), policy, config.tau,
        config.logit_floor);
    Cell& cell = results[idx];
    if (!lp.ok()) {
      cell.status = lp.status();
      return;
    }
    for (std::size_t v = 0; v < lp->size(); ++v) {
      const double loss = std::abs(full[s][v] - (*lp)[v]);
      if (loss > cell.loss) {
        cell.loss = loss;
        cell.token = static_cast<TokenId>(v);
      }
    }
  });

  // Sequential reduction in (step, span, token) order: the witness is the
  // first maximum regardless of how work was scheduled.
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const Cell& cell = results[idx];
    if (!cell.status.ok()) return cell.status;
    if (!report.witness.has_value() || cell.loss > report.max_loss) {
      report.max_loss = cell.loss;
      report.witness = AuditWitness{.span = family[idx % family.size()],
                                    .token = cell.token,
                                    .step = static_cast<int>(idx / family.size()) + 1};
    }
  }
  report.evaluations = static_cast<std::uint64_t>(cells) * vocab;
  report.steps_audited = steps;
  return report;
}

}  // namespace cid
