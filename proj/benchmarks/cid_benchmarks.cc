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

#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "cid/analysis.h"
#include "cid/core_math.h"
#include "cid/corpus.h"
#include "cid/decoder.h"
#include "cid/rouge.h"

namespace cid {
namespace {

std::vector<double> RandomLogits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 3.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

struct Bundled {
  CopyNgramModel model;
  PromptTemplate prompt;
  std::vector<Example> examples;
};

const Bundled& LoadBundled() {
  static const Bundled* bundled = [] {
    const std::string dir = CID_DATA_DIR;
    TextCorpus text = *LoadTextCorpus(dir + "/contexts.txt", dir + "/queries.txt",
                                      dir + "/references.txt");
    std::vector<std::string> extra = text.contexts;
    extra.insert(extra.end(), text.queries.begin(), text.queries.end());
    extra.insert(extra.end(), text.references.begin(), text.references.end());
    CopyNgramModel model = *BuildToyModel(*ReadLines(dir + "/train.txt"), extra);
    PromptTemplate prompt = *DocumentPromptTemplate(model.vocab());
    std::vector<Example> examples = *EncodeCorpus(model.vocab(), text);
    return new Bundled{std::move(model), std::move(prompt), std::move(examples)};
  }();
  return *bundled;
}

void BM_LogSoftmax(benchmark::State& state) {
  const std::vector<double> logits = RandomLogits(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(LogSoftmax(logits, 0.8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogSoftmax)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_CidLogDistribution(benchmark::State& state) {
  const LogitVector post = *LogitVector::Create(RandomLogits(state.range(0), 2));
  const LogitVector prior = *LogitVector::Create(RandomLogits(state.range(0), 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CidLogDistribution(post, prior, 1.5, 0.8));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CidLogDistribution)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_Pmi(benchmark::State& state) {
  const LogitVector post = *LogitVector::Create(RandomLogits(state.range(0), 4));
  const LogitVector prior = *LogitVector::Create(RandomLogits(state.range(0), 5));
  for (auto _ : state) benchmark::DoNotOptimize(Pmi(post, prior, 0.8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pmi)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_ToyLogits(benchmark::State& state) {
  const Bundled& b = LoadBundled();
  const Example& e = b.examples[0];
  std::vector<TokenId> prefix = b.prompt.Build(e.context, e.query, {});
  while (prefix.size() < static_cast<std::size_t>(state.range(0))) {
    prefix.insert(prefix.end(), e.context.begin(), e.context.end());
  }
  prefix.resize(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b.model.Logits(prefix));
}
BENCHMARK(BM_ToyLogits)->RangeMultiplier(4)->Range(16, 1024);

void BM_Decode(benchmark::State& state) {
  const Bundled& b = LoadBundled();
  const Example& e = b.examples[0];
  const DecodeConfig config{.lambda = 1.5, .tau = 0.8,
                            .max_tokens = static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decode(b.model, b.prompt, e.query, e.context, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decode)->Arg(10)->Arg(50);

void BM_PrivacyAudit(benchmark::State& state) {
  const Bundled& b = LoadBundled();
  const Example& e = b.examples[0];
  std::vector<TokenId> context = e.context;
  context.resize(state.range(0));
  const AuditOptions options{.family = RemovalFamily::kContiguousSpans, .threads = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(PrivacyAudit(b.model, b.prompt, e.query, context,
                                          PrivacyBudget{.epsilon = 1.0},
                                          {.tau = 0.8}, options));
  }
}
BENCHMARK(BM_PrivacyAudit)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NgramSweep(benchmark::State& state) {
  const Bundled& b = LoadBundled();
  const Example& e = b.examples[0];
  const Transcript t = *Decode(b.model, b.prompt, e.query, e.context,
                               {.lambda = 1.5, .tau = 0.8, .max_tokens = 20});
  const SweepOptions options{.n = static_cast<std::size_t>(state.range(0)),
                             .threads = static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(NgramSweep(b.model, b.prompt, t, options));
  }
}
BENCHMARK(BM_NgramSweep)
    ->Args({1, 1})
    ->Args({1, 4})
    ->Args({4, 1})
    ->Unit(benchmark::kMillisecond);

void BM_RougeL(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<TokenId> a(state.range(0)), r(state.range(0));
  for (TokenId& t : a) t = static_cast<TokenId>(rng() % 50);
  for (TokenId& t : r) t = static_cast<TokenId>(rng() % 50);
  for (auto _ : state) benchmark::DoNotOptimize(RougeLF1(a, r));
}
BENCHMARK(BM_RougeL)->Arg(50)->Arg(500);

}  // namespace
}  // namespace cid

BENCHMARK_MAIN();
