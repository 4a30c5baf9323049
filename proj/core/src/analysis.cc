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

#include "cid/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"
#include "cid/rouge.h"
#include "parallel.h"

namespace cid {
namespace {

absl::Status FirstError(std::span<const absl::Status> statuses) {
  for (const absl::Status& s : statuses) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

double Mean(std::span<const double> values) {
  return values.empty() ? 0.0
                        : PairwiseSum(values) / static_cast<double>(values.size());
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

double SequenceInfluence(const Transcript& transcript) {
  std::vector<double> values;
  values.reserve(transcript.records.size());
  for (const InfluenceRecord& r : transcript.records) values.push_back(r.influence);
  return PairwiseSum(values);
}

absl::StatusOr<double> CorpusAverage(std::span<const Transcript> transcripts) {
  if (transcripts.empty()) {
    return absl::InvalidArgumentError("corpus average of an empty set");
  }
  std::vector<double> per_context;
  per_context.reserve(transcripts.size());
  for (const Transcript& t : transcripts) per_context.push_back(SequenceInfluence(t));
  return Mean(per_context);
}

absl::StatusOr<SweepResult> NgramSweep(const LogitProvider& provider,
                                       const PromptTemplate& prompt,
                                       const Transcript& transcript,
                                       const SweepOptions& options) {
  if (!transcript.valid) {
    return absl::FailedPreconditionError("cannot sweep an invalid transcript");
  }
  const std::size_t d = transcript.context.size();
  if (options.n < 1 || options.n > d) {
    return absl::InvalidArgumentError(
        absl::StrCat("n-gram size ", options.n, " outside [1, ", d, "]"));
  }
  if (options.stride < 1) {
    return absl::InvalidArgumentError("stride must be >= 1");
  }
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + options.n <= d; s += options.stride) {
    starts.push_back(s);
  }
  const std::size_t steps = transcript.records.size();
  const std::uint64_t required =
      static_cast<std::uint64_t>(starts.size()) * steps;
  if (required > options.compute_cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "n-gram sweep needs ", required, " re-scorings (", starts.size(),
        " windows x ", steps, " steps); compute cap is ", options.compute_cap));
  }

  const LambdaPolicy policy = PolicyFor(transcript);
  const DecodeConfig& cfg = transcript.config;
  const std::span<const TokenId> generated(transcript.generated);

  std::vector<double> with_context(steps);
  std::vector<absl::Status> status(steps);
  internal::ParallelFor(steps, options.threads, [&](std::size_t s) {
    absl::StatusOr<std::vector<double>> lp =
        CidLogProbs(provider, prompt, transcript.query, transcript.context,
                    generated.first(s), policy, cfg.tau, cfg.logit_floor);
    if (!lp.ok()) {
      status[s] = lp.status();
      return;
    }
    with_context[s] = (*lp)[transcript.records[s].token];
  });
  if (absl::Status s = FirstError(status); !s.ok()) return s;

  const std::size_t cells = steps * starts.size();
  std::vector<double> influence(cells);
  std::vector<absl::Status> cell_status(cells);
  internal::ParallelFor(cells, options.threads, [&](std::size_t idx) {
    const std::size_t s = idx / starts.size();
    const std::vector<TokenId> reduced = RemoveSpan(
        transcript.context, ContextSpan{starts[idx % starts.size()], options.n});
    absl::StatusOr<std::vector<double>> lp =
        CidLogProbs(provider, prompt, transcript.query, reduced,
                    generated.first(s), policy, cfg.tau, cfg.logit_floor);
    if (!lp.ok()) {
      cell_status[idx] = lp.status();
      return;
    }
    influence[idx] =
        std::abs(with_context[s] - (*lp)[transcript.records[s].token]);
  });
  if (absl::Status s = FirstError(cell_status); !s.ok()) return s;

  SweepResult result{.n = options.n, .stride = options.stride};
  result.steps.reserve(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    StepSweep step{.position = transcript.records[s].position,
                   .token = transcript.records[s].token};
    step.windows.reserve(starts.size());
    for (std::size_t w = 0; w < starts.size(); ++w) {
      const double v = influence[s * starts.size() + w];
      step.windows.push_back({starts[w], v});
      if (w == 0 || v > step.max_influence) {
        step.max_influence = v;
        step.argmax_start = starts[w];
      }
    }
    result.steps.push_back(std::move(step));
  }
  return result;
}

std::vector<std::pair<std::size_t, double>> WindowHeatmap(
    const SweepResult& sweep, std::size_t context_size,
    std::optional<int> position) {
  std::vector<double> heat(context_size, 0.0);
  for (const StepSweep& step : sweep.steps) {
    if (position.has_value() && step.position != *position) continue;
    for (const WindowInfluence& w : step.windows) {
      const std::size_t end = std::min(w.start + sweep.n, context_size);
      for (std::size_t i = w.start; i < end; ++i) {
        heat[i] = std::max(heat[i], w.influence);
      }
    }
  }
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(context_size);
  for (std::size_t i = 0; i < context_size; ++i) out.emplace_back(i, heat[i]);
  return out;
}

absl::StatusOr<ProfileAxis> ParseProfileAxis(std::string_view name) {
  if (name == "response-position") return ProfileAxis::kResponsePosition;
  if (name == "context-window-position") {
    return ProfileAxis::kContextWindowPosition;
  }
  if (name == "lambda") return ProfileAxis::kLambda;
  if (name == "tau") return ProfileAxis::kTau;
  if (name == "context-size") return ProfileAxis::kContextSize;
  if (name == "ngram-size") return ProfileAxis::kNgramSize;
  return absl::InvalidArgumentError(absl::StrCat("unknown axis '", std::string(name), "'"));
}

std::string_view ProfileAxisName(ProfileAxis axis) {
  switch (axis) {
    case ProfileAxis::kResponsePosition:
      return "response-position";
    case ProfileAxis::kContextWindowPosition:
      return "context-window-position";
    case ProfileAxis::kLambda:
      return "lambda";
    case ProfileAxis::kTau:
      return "tau";
    case ProfileAxis::kContextSize:
      return "context-size";
    case ProfileAxis::kNgramSize:
      return "ngram-size";
  }
  return "unknown";
}

Profile PositionalProfile(std::span<const Transcript> transcripts) {
  std::map<int, std::vector<double>> by_position;
  for (const Transcript& t : transcripts) {
    for (const InfluenceRecord& r : t.records) {
      by_position[r.position].push_back(r.influence);
    }
  }
  Profile profile{.axis = ProfileAxis::kResponsePosition,
                  .aggregation = "per-step"};
  for (const auto& [position, values] : by_position) {
    profile.points.push_back({.axis_value = static_cast<double>(position),
                              .mean_influence = Mean(values),
                              .count = values.size()});
  }
  return profile;
}

absl::StatusOr<Profile> ContextWindowProfile(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Transcript> transcripts, const SweepOptions& options) {
  if (transcripts.empty()) {
    return absl::InvalidArgumentError("context-window profile of an empty set");
  }
  std::map<std::size_t, std::vector<double>> by_start;
  for (const Transcript& t : transcripts) {
    absl::StatusOr<SweepResult> sweep = NgramSweep(provider, prompt, t, options);
    if (!sweep.ok()) return sweep.status();
    for (const StepSweep& step : sweep->steps) {
      for (const WindowInfluence& w : step.windows) {
        by_start[w.start].push_back(w.influence);
      }
    }
  }
  Profile profile{.axis = ProfileAxis::kContextWindowPosition,
                  .aggregation = "per-step"};
  for (const auto& [start, values] : by_start) {
    profile.points.push_back({.axis_value = static_cast<double>(start),
                              .mean_influence = Mean(values),
                              .count = values.size()});
  }
  return profile;
}

absl::StatusOr<Profile> NgramSizeProfile(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Transcript> transcripts, std::span<const std::size_t> sizes,
    NgramAggregation aggregation, const SweepOptions& options) {
  if (transcripts.empty()) {
    return absl::InvalidArgumentError("n-gram profile of an empty set");
  }
  Profile profile{.axis = ProfileAxis::kNgramSize,
                  .aggregation = aggregation == NgramAggregation::kPerStep
                                     ? "per-step"
                                     : "per-context"};
  for (std::size_t n : sizes) {
    SweepOptions opts = options;
    opts.n = n;
    std::vector<double> values;
    for (const Transcript& t : transcripts) {
      absl::StatusOr<SweepResult> sweep = NgramSweep(provider, prompt, t, opts);
      if (!sweep.ok()) return sweep.status();
      std::vector<double> maxima;
      for (const StepSweep& step : sweep->steps) {
        maxima.push_back(step.max_influence);
      }
      if (aggregation == NgramAggregation::kPerStep) {
        values.insert(values.end(), maxima.begin(), maxima.end());
      } else {
        values.push_back(PairwiseSum(maxima));
      }
    }
    if (values.empty()) continue;
    profile.points.push_back({.axis_value = static_cast<double>(n),
                              .mean_influence = Mean(values),
                              .count = values.size()});
  }
  return profile;
}

absl::StatusOr<std::vector<Transcript>> DecodeCorpus(
    const LogitProvider& provider, const PromptTemplate& prompt,
    std::span<const Example> corpus, const DecodeConfig& config,
    const AblationOptions& options) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::vector<Transcript> out(corpus.size());
  std::vector<absl::Status> status(corpus.size());
  internal::ParallelFor(corpus.size(), options.threads, [&](std::size_t i) {
    DecodeConfig cfg = config;
    cfg.seed = config.seed + i;
    absl::StatusOr<Transcript> t =
        options.budget.has_value()
            ? BoundedDecode(provider, prompt, corpus[i].query, corpus[i].context,
                            *options.budget, cfg)
            : Decode(provider, prompt, corpus[i].query, corpus[i].context, cfg);
    if (!t.ok()) {
      status[i] = t.status();
    } else if (!t->valid) {
      status[i] = absl::UnavailableError(t->error);
    } else {
      out[i] = *std::move(t);
    }
  });
  if (absl::Status s = FirstError(status); !s.ok()) return s;
  return out;
}

absl::StatusOr<Profile> AblationSweep(const LogitProvider& provider,
                                      const PromptTemplate& prompt,
                                      std::span<const Example> corpus,
                                      ProfileAxis axis,
                                      std::span<const double> values,
                                      const DecodeConfig& base,
                                      const AblationOptions& options) {
  if (axis != ProfileAxis::kLambda && axis != ProfileAxis::kTau &&
      axis != ProfileAxis::kContextSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("ablation axis must be lambda, tau or context-size, got ",
                     std::string(ProfileAxisName(axis))));
  }
  if (corpus.empty()) return absl::InvalidArgumentError("empty corpus");
  std::size_t min_context = corpus.front().context.size();
  for (const Example& e : corpus) {
    min_context = std::min(min_context, e.context.size());
  }
  for (double v : values) {
    const bool ok =
        (axis == ProfileAxis::kLambda && v >= 0.0 && std::isfinite(v)) ||
        (axis == ProfileAxis::kTau && v > 0.0 && std::isfinite(v)) ||
        (axis == ProfileAxis::kContextSize && v >= 0.0 && v == std::floor(v) &&
         v <= static_cast<double>(min_context));
    if (!ok) {
      return absl::InvalidArgumentError(absl::StrCat(
          "invalid ", std::string(ProfileAxisName(axis)), " value ", v,
          axis == ProfileAxis::kContextSize
              ? absl::StrCat(" (shortest context has ", min_context, " tokens)")
              : ""));
    }
  }

  Profile profile{.axis = axis, .aggregation = "per-context"};
  for (double v : values) {
    DecodeConfig cfg = base;
    std::vector<Example> truncated;
    std::span<const Example> run = corpus;
    if (axis == ProfileAxis::kLambda) cfg.lambda = v;
    if (axis == ProfileAxis::kTau) cfg.tau = v;
    if (axis == ProfileAxis::kContextSize) {
      const auto keep = static_cast<std::size_t>(v);
      truncated.assign(corpus.begin(), corpus.end());
      for (Example& e : truncated) e.context.resize(keep);
      run = truncated;
    }
    absl::StatusOr<std::vector<Transcript>> transcripts =
        DecodeCorpus(provider, prompt, run, cfg, options);
    if (!transcripts.ok()) return transcripts.status();
    absl::StatusOr<double> mean = CorpusAverage(*transcripts);
    if (!mean.ok()) return mean.status();

    ProfilePoint point{.axis_value = v,
                       .mean_influence = *mean,
                       .count = transcripts->size()};
    std::vector<double> rouge;
    for (std::size_t i = 0; i < run.size(); ++i) {
      if (run[i].reference.empty()) continue;
      rouge.push_back(RougeLF1((*transcripts)[i].generated, run[i].reference));
    }
    if (!rouge.empty()) point.mean_rouge = Mean(rouge);
    profile.points.push_back(point);
  }
  return profile;
}

}  // namespace cid
