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

// cid: decoding, auditing and influence analysis over a logit provider.
//
// Exit codes: 0 ok, 2 configuration error, 3 provider failure, 4 compute
// budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "cid/analysis.h"
#include "cid/bridge_provider.h"
#include "cid/corpus.h"
#include "cid/decoder.h"
#include "cid/report_io.h"
#include "cid/rouge.h"
#include "cid/toy_lm.h"
#include "cid/transcript_io.h"
#include "json.hpp"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

#ifndef CID_DATA_DIR
#define CID_DATA_DIR "data"
#endif

namespace cid::cli {
namespace {

using nlohmann::ordered_json;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitProvider = 3,
  kExitBudget = 4,
};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kResourceExhausted:
      return kExitBudget;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kInternal:
    case absl::StatusCode::kDataLoss:
      return kExitProvider;
    default:
      return kExitConfig;
  }
}

struct Flags {
  std::string data_dir = CID_DATA_DIR;
  std::string provider = "toy";
  std::string bridge_cmd;
  std::string toy_model;
  std::string train_file;
  std::string context_file;
  std::string query_file;
  std::string reference_file;
  int limit = 0;
  int example_index = 0;
  int max_context = 0;

  double lambda = 1.0;
  double tau = 0.8;
  int max_tokens = 50;
  std::uint64_t seed = 0;
  bool greedy = false;
  int eos = -1;
  double epsilon = 1.0;
  double lambda_max = 1.0;
  bool bounded = false;  // set when --epsilon is given

  std::size_t ngram = 1;
  std::size_t stride = 1;
  std::string axis = "lambda";
  std::string values;
  std::string aggregation = "per-step";
  std::string family = "spans";
  int steps = 1;
  std::uint64_t compute_cap = 0;  // 0: library default
  std::string format = "csv";
  std::string transcripts;
  std::string heatmap;
  std::string candidate;
  std::string out = "-";
  int threads = 0;
};

// Loaded provider, prompt and encoded corpus for one run.
struct Session {
  std::unique_ptr<LogitProvider> provider;
  const Vocab* vocab = nullptr;  // toy provider only
  const BridgeProvider* bridge = nullptr;
  PromptTemplate prompt;
  std::vector<Example> examples;
  ordered_json provider_config;
  ordered_json input_config;
};

std::string DataPath(const Flags& f, const char* name) {
  return absl::StrCat(f.data_dir, "/", name);
}

absl::StatusOr<std::vector<TokenId>> EncodeWith(const Session& s,
                                                const std::string& text) {
  if (s.vocab != nullptr) return s.vocab->Encode(text);
  return s.bridge->Encode(text);
}

// The corpus is always loaded: it also fixes the toy vocabulary.
absl::StatusOr<std::unique_ptr<Session>> OpenSession(const Flags& f) {
  auto s = std::make_unique<Session>();
  TextCorpus text;
  {
    // Without an explicit context file the bundled corpus is used whole.
    const bool bundled = f.context_file.empty();
    const std::string contexts =
        bundled ? DataPath(f, "contexts.txt") : f.context_file;
    const std::string queries = !f.query_file.empty() ? f.query_file
                                : bundled             ? DataPath(f, "queries.txt")
                                                      : "";
    const std::string references =
        !f.reference_file.empty() ? f.reference_file
        : bundled                 ? DataPath(f, "references.txt")
                                  : "";
    if (queries.empty()) {
      return absl::InvalidArgumentError("--query-file is required with --context-file");
    }
    absl::StatusOr<TextCorpus> loaded = LoadTextCorpus(contexts, queries, references);
    if (!loaded.ok()) return loaded.status();
    text = *std::move(loaded);
    s->input_config = {{"context_file", contexts},
                       {"query_file", queries},
                       {"reference_file", references},
                       {"limit", f.limit},
                       {"max_context", f.max_context}};
  }

  if (f.provider == "toy") {
    absl::StatusOr<CopyNgramModel> model = absl::UnknownError("unset");
    if (!f.toy_model.empty()) {
      std::ifstream in(f.toy_model);
      if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", f.toy_model));
      ordered_json doc = ordered_json::parse(in, nullptr, false);
      if (doc.is_discarded()) {
        return absl::InvalidArgumentError(absl::StrCat(f.toy_model, " is not JSON"));
      }
      model = CopyNgramModel::FromJson(doc);
      s->provider_config = {{"kind", "toy"}, {"toy_model", f.toy_model}};
    } else {
      const std::string train_path =
          f.train_file.empty() ? DataPath(f, "train.txt") : f.train_file;
      absl::StatusOr<std::vector<std::string>> train = ReadLines(train_path);
      if (!train.ok()) return train.status();
      std::vector<std::string> extra = text.contexts;
      extra.insert(extra.end(), text.queries.begin(), text.queries.end());
      extra.insert(extra.end(), text.references.begin(), text.references.end());
      model = BuildToyModel(*train, extra);
      s->provider_config = {{"kind", "toy"}, {"train_file", train_path}};
    }
    if (!model.ok()) return model.status();
    auto owned = std::make_unique<CopyNgramModel>(*std::move(model));
    s->vocab = &owned->vocab();
    absl::StatusOr<PromptTemplate> prompt = DocumentPromptTemplate(owned->vocab());
    if (!prompt.ok()) return prompt.status();
    s->prompt = *std::move(prompt);
    s->provider_config["params"] = owned->ToJson()["params"];
    s->provider = std::move(owned);
  } else if (f.provider == "bridge") {
    if (f.bridge_cmd.empty()) {
      return absl::InvalidArgumentError("--provider bridge requires --bridge-cmd");
    }
    absl::StatusOr<std::unique_ptr<BridgeProvider>> bridge =
        BridgeProvider::Launch(f.bridge_cmd);
    if (!bridge.ok()) return bridge.status();
    s->bridge = bridge->get();
    s->provider = *std::move(bridge);
    s->provider_config = {{"kind", "bridge"}, {"bridge_cmd", f.bridge_cmd}};
    // Blank line between document and query, as in the toy template.
    for (auto [text_part, dest] :
         {std::pair{"Document: ", &s->prompt.header},
          std::pair{".", &s->prompt.empty_document},
          std::pair{"\n\n", &s->prompt.separator}}) {
      absl::StatusOr<std::vector<TokenId>> ids = s->bridge->Encode(text_part);
      if (!ids.ok()) return ids.status();
      *dest = *std::move(ids);
    }
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown provider '", f.provider, "' (toy|bridge)"));
  }
  s->provider_config["identity"] = s->provider->Identity();

  // Applied after the toy vocabulary is built so --limit keeps the model fixed.
  if (f.limit > 0 && static_cast<std::size_t>(f.limit) < text.contexts.size()) {
    text.contexts.resize(f.limit);
    text.queries.resize(f.limit);
    if (!text.references.empty()) text.references.resize(f.limit);
  }

  for (std::size_t i = 0; i < text.contexts.size(); ++i) {
    Example e;
    absl::StatusOr<std::vector<TokenId>> c = EncodeWith(*s, text.contexts[i]);
    if (!c.ok()) return c.status();
    absl::StatusOr<std::vector<TokenId>> q = EncodeWith(*s, text.queries[i]);
    if (!q.ok()) return q.status();
    e.context = *std::move(c);
    e.query = *std::move(q);
    if (!text.references.empty()) {
      absl::StatusOr<std::vector<TokenId>> r = EncodeWith(*s, text.references[i]);
      if (!r.ok()) return r.status();
      e.reference = *std::move(r);
    }
    if (f.max_context > 0 && e.context.size() > static_cast<std::size_t>(f.max_context)) {
      e.context.resize(f.max_context);
    }
    s->examples.push_back(std::move(e));
  }
  return s;
}

DecodeConfig ConfigFrom(const Flags& f) {
  DecodeConfig c{.lambda = f.lambda,
                 .tau = f.tau,
                 .max_tokens = f.max_tokens,
                 .seed = f.seed,
                 .mode = f.greedy ? SamplingMode::kGreedy : SamplingMode::kSample};
  if (f.eos >= 0) c.eos_token = f.eos;
  return c;
}

std::optional<PrivacyBudget> BudgetFrom(const Flags& f) {
  if (!f.bounded) return std::nullopt;
  return PrivacyBudget{.epsilon = f.epsilon, .lambda_max = f.lambda_max};
}

ordered_json RunConfig(const Flags& f, const Session& s, const std::string& command) {
  ordered_json run;
  run["command"] = command;
  run["provider"] = s.provider_config;
  if (!s.input_config.is_null()) run["inputs"] = s.input_config;
  run["decode"] = DecodeConfigToJson(ConfigFrom(f));
  if (std::optional<PrivacyBudget> b = BudgetFrom(f); b.has_value()) {
    run["budget"] = {{"epsilon", b->epsilon}, {"lambda_max", b->lambda_max}};
  } else {
    run["budget"] = nullptr;
  }
  return run;
}

absl::Status WriteOutput(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return absl::OkStatus();
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::InvalidArgumentError(absl::StrCat("cannot write ", path));
  out << content;
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

// Summary lines go to stdout unless stdout carries the artifact.
std::ostream& SummaryStream(const Flags& f) {
  return f.out == "-" ? std::cerr : std::cout;
}

absl::StatusOr<std::vector<double>> ParseValues(const std::string& csv) {
  std::vector<double> out;
  for (absl::string_view piece : absl::StrSplit(csv, ',', absl::SkipWhitespace())) {
    double v = 0.0;
    if (!absl::SimpleAtod(piece, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("cannot parse value '", std::string(piece), "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("--values is empty");
  return out;
}

absl::StatusOr<std::size_t> ExampleIndex(const Flags& f, const Session& s) {
  if (f.example_index < 0 ||
      static_cast<std::size_t>(f.example_index) >= s.examples.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--example-index ", f.example_index, " outside [0, ", s.examples.size(), ")"));
  }
  return static_cast<std::size_t>(f.example_index);
}

absl::StatusOr<std::vector<Transcript>> Transcripts(const Flags& f, const Session& s) {
  if (!f.transcripts.empty()) {
    std::ifstream in(f.transcripts);
    if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", f.transcripts));
    absl::StatusOr<std::vector<Transcript>> ts = ReadTranscriptsJsonl(in);
    if (!ts.ok()) return ts.status();
    for (const Transcript& t : *ts) {
      if (t.provider != s.provider->Identity()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "transcript provider '", t.provider, "' differs from '",
            s.provider->Identity(), "'"));
      }
    }
    return ts;
  }
  return DecodeCorpus(*s.provider, s.prompt, s.examples, ConfigFrom(f),
                      {.budget = BudgetFrom(f), .threads = f.threads});
}

SweepOptions SweepOptionsFrom(const Flags& f) {
  SweepOptions o{.n = f.ngram, .stride = f.stride, .threads = f.threads};
  if (f.compute_cap > 0) o.compute_cap = f.compute_cap;
  return o;
}

absl::Status CmdDecode(const Flags& f) {
  absl::StatusOr<std::unique_ptr<Session>> s = OpenSession(f);
  if (!s.ok()) return s.status();
  if (absl::Status st = ConfigFrom(f).Validate(); !st.ok()) return st;
  absl::StatusOr<std::vector<Transcript>> ts =
      DecodeCorpus(*(*s)->provider, (*s)->prompt, (*s)->examples, ConfigFrom(f),
                   {.budget = BudgetFrom(f), .threads = f.threads});
  if (!ts.ok()) return ts.status();

  std::ostringstream out;
  WriteTranscriptsJsonl(out, *ts, (*s)->vocab);
  if (absl::Status st = WriteOutput(f.out, out.str()); !st.ok()) return st;

  std::vector<double> influence, bound, rouge;
  for (std::size_t i = 0; i < ts->size(); ++i) {
    for (const InfluenceRecord& r : (*ts)[i].records) {
      influence.push_back(r.influence);
      bound.push_back(r.bound);
    }
    if (!(*s)->examples[i].reference.empty()) {
      rouge.push_back(RougeLF1((*ts)[i].generated, (*s)->examples[i].reference));
    }
  }
  auto mean = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : PairwiseSum(v) / static_cast<double>(v.size());
  };
  std::ostream& summary = SummaryStream(f);
  summary << "transcripts=" << ts->size() << " tokens=" << influence.size()
          << " mean_influence=" << FormatDouble(mean(influence))
          << " mean_sequence_influence=" << FormatDouble(*CorpusAverage(*ts))
          << " mean_bound=" << FormatDouble(mean(bound));
  if (!rouge.empty()) summary << " mean_rouge_l=" << FormatDouble(mean(rouge));
  summary << "\n";
  return absl::OkStatus();
}

absl::Status CmdAudit(const Flags& f) {
  absl::StatusOr<std::unique_ptr<Session>> s = OpenSession(f);
  if (!s.ok()) return s.status();
  absl::StatusOr<std::size_t> idx = ExampleIndex(f, **s);
  if (!idx.ok()) return idx.status();
  absl::StatusOr<RemovalFamily> family = ParseRemovalFamily(f.family);
  if (!family.ok()) return family.status();
  AuditOptions options{.family = *family, .steps = f.steps, .threads = f.threads};
  if (f.compute_cap > 0) options.compute_cap = f.compute_cap;
  const Example& e = (*s)->examples[*idx];
  absl::StatusOr<AuditReport> report =
      PrivacyAudit(*(*s)->provider, (*s)->prompt, e.query, e.context, BudgetFrom(f),
                   ConfigFrom(f), options);
  if (!report.ok()) return report.status();

  ordered_json run = RunConfig(f, **s, "audit");
  run["audit"] = {{"example_index", *idx},
                  {"context_size", e.context.size()},
                  {"family", f.family},
                  {"steps", options.steps},
                  {"compute_cap", options.compute_cap}};
  if (absl::Status st = WriteOutput(f.out, AuditReportToJson(*report, run).dump(2) + "\n");
      !st.ok()) {
    return st;
  }
  SummaryStream(f) << "max_loss=" << FormatDouble(report->max_loss)
                   << " evaluations=" << report->evaluations << "\n";
  return absl::OkStatus();
}

absl::Status CmdSweep(const Flags& f) {
  absl::StatusOr<std::unique_ptr<Session>> s = OpenSession(f);
  if (!s.ok()) return s.status();
  Transcript t;
  if (f.transcripts.empty()) {
    absl::StatusOr<std::size_t> idx = ExampleIndex(f, **s);
    if (!idx.ok()) return idx.status();
    const Example& e = (*s)->examples[*idx];
    DecodeConfig config = ConfigFrom(f);
    config.seed = f.seed + *idx;  // same seed DecodeCorpus would use
    absl::StatusOr<Transcript> decoded =
        f.bounded ? BoundedDecode(*(*s)->provider, (*s)->prompt, e.query, e.context,
                                  *BudgetFrom(f), config)
                  : Decode(*(*s)->provider, (*s)->prompt, e.query, e.context, config);
    if (!decoded.ok()) return decoded.status();
    if (!decoded->valid) return absl::UnavailableError(decoded->error);
    t = *std::move(decoded);
  } else {
    absl::StatusOr<std::vector<Transcript>> ts = Transcripts(f, **s);
    if (!ts.ok()) return ts.status();
    if (f.example_index < 0 || static_cast<std::size_t>(f.example_index) >= ts->size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "--example-index ", f.example_index, " outside [0, ", ts->size(), ")"));
    }
    t = (*ts)[f.example_index];
  }
  absl::StatusOr<SweepResult> sweep =
      NgramSweep(*(*s)->provider, (*s)->prompt, t, SweepOptionsFrom(f));
  if (!sweep.ok()) return sweep.status();

  ordered_json run = RunConfig(f, **s, "sweep");
  run["decode"] = DecodeConfigToJson(t.config);
  run["sweep"] = {{"example_index", f.example_index},
                  {"transcripts", f.transcripts},
                  {"ngram", f.ngram},
                  {"stride", f.stride}};
  std::ostringstream out;
  if (f.format == "json") {
    ordered_json doc = SweepToJson(*sweep, run);
    doc["heatmap"] = HeatmapToJson(WindowHeatmap(*sweep, t.context.size()));
    out << doc.dump(2) << "\n";
  } else if (f.format == "csv") {
    WriteSweepCsv(out, *sweep, run);
  } else {
    return absl::InvalidArgumentError(absl::StrCat("unknown format '", f.format, "'"));
  }
  if (absl::Status st = WriteOutput(f.out, out.str()); !st.ok()) return st;
  if (!f.heatmap.empty()) {
    ordered_json heat = {{"schema", "cid.heatmap"},
                         {"version", kReportSchemaVersion},
                         {"config", run},
                         {"cells", HeatmapToJson(WindowHeatmap(*sweep, t.context.size()))}};
    if (absl::Status st = WriteOutput(f.heatmap, heat.dump(2) + "\n"); !st.ok()) {
      return st;
    }
  }
  return absl::OkStatus();
}

absl::Status CmdProfile(const Flags& f) {
  absl::StatusOr<ProfileAxis> axis = ParseProfileAxis(f.axis);
  if (!axis.ok()) return axis.status();
  absl::StatusOr<std::unique_ptr<Session>> s = OpenSession(f);
  if (!s.ok()) return s.status();
  const Session& session = **s;

  ordered_json run = RunConfig(f, session, "profile");
  run["profile"] = {{"axis", f.axis}, {"values", f.values}, {"transcripts", f.transcripts}};
  absl::StatusOr<Profile> profile = absl::UnknownError("unset");
  switch (*axis) {
    case ProfileAxis::kLambda:
    case ProfileAxis::kTau:
    case ProfileAxis::kContextSize: {
      absl::StatusOr<std::vector<double>> values = ParseValues(f.values);
      if (!values.ok()) return values.status();
      profile = AblationSweep(*session.provider, session.prompt, session.examples,
                              *axis, *values, ConfigFrom(f),
                              {.budget = BudgetFrom(f), .threads = f.threads});
      break;
    }
    case ProfileAxis::kResponsePosition: {
      absl::StatusOr<std::vector<Transcript>> ts = Transcripts(f, session);
      if (!ts.ok()) return ts.status();
      profile = PositionalProfile(*ts);
      break;
    }
    case ProfileAxis::kContextWindowPosition: {
      absl::StatusOr<std::vector<Transcript>> ts = Transcripts(f, session);
      if (!ts.ok()) return ts.status();
      profile = ContextWindowProfile(*session.provider, session.prompt, *ts,
                                     SweepOptionsFrom(f));
      run["profile"]["ngram"] = f.ngram;
      run["profile"]["stride"] = f.stride;
      break;
    }
    case ProfileAxis::kNgramSize: {
      absl::StatusOr<std::vector<double>> values = ParseValues(f.values);
      if (!values.ok()) return values.status();
      std::vector<std::size_t> sizes;
      for (double v : *values) {
        if (v < 1 || v != std::floor(v)) {
          return absl::InvalidArgumentError(absl::StrCat("invalid n-gram size ", v));
        }
        sizes.push_back(static_cast<std::size_t>(v));
      }
      NgramAggregation aggregation;
      if (f.aggregation == "per-step") {
        aggregation = NgramAggregation::kPerStep;
      } else if (f.aggregation == "per-context") {
        aggregation = NgramAggregation::kPerContext;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown aggregation '", f.aggregation, "'"));
      }
      absl::StatusOr<std::vector<Transcript>> ts = Transcripts(f, session);
      if (!ts.ok()) return ts.status();
      profile = NgramSizeProfile(*session.provider, session.prompt, *ts, sizes,
                                 aggregation, SweepOptionsFrom(f));
      run["profile"]["stride"] = f.stride;
      run["profile"]["aggregation"] = f.aggregation;
      break;
    }
  }
  if (!profile.ok()) return profile.status();

  std::ostringstream out;
  if (f.format == "json") {
    out << ProfileToJson(*profile, run).dump(2) << "\n";
  } else if (f.format == "csv") {
    WriteProfileCsv(out, *profile, run);
  } else {
    return absl::InvalidArgumentError(absl::StrCat("unknown format '", f.format, "'"));
  }
  return WriteOutput(f.out, out.str());
}

absl::Status CmdRouge(const Flags& f) {
  auto read_tokens = [](const std::string& path) -> absl::StatusOr<std::vector<std::string>> {
    absl::StatusOr<std::vector<std::string>> lines = ReadLines(path);
    if (!lines.ok()) return lines.status();
    std::vector<std::string> tokens;
    for (const std::string& line : *lines) {
      std::vector<std::string> words = SplitWhitespace(line);
      tokens.insert(tokens.end(), words.begin(), words.end());
    }
    return tokens;
  };
  absl::StatusOr<std::vector<std::string>> cand = read_tokens(f.candidate);
  if (!cand.ok()) return cand.status();
  absl::StatusOr<std::vector<std::string>> ref = read_tokens(f.reference_file);
  if (!ref.ok()) return ref.status();
  return WriteOutput(f.out, absl::StrFormat("%.5f\n", RougeLF1(*cand, *ref)));
}

absl::Status CmdTrain(const Flags& f) {
  absl::StatusOr<std::unique_ptr<Session>> s = OpenSession(f);
  if (!s.ok()) return s.status();
  const auto* model = dynamic_cast<const CopyNgramModel*>((*s)->provider.get());
  if (model == nullptr) {
    return absl::InvalidArgumentError("train requires --provider toy");
  }
  return WriteOutput(f.out, model->ToJson().dump(1) + "\n");
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("cid");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("CID_LOG_LEVEL");
  spdlog::set_level(level != nullptr ? spdlog::level::from_str(level)
                                     : spdlog::level::warn);
}

int Main(int argc, char** argv) {
  ConfigureLogging();
  Flags f;
  CLI::App app{"Context-influence decoding, privacy auditing and attribution."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&f](CLI::App* cmd) {
    cmd->add_option("--data-dir", f.data_dir, "Bundled corpus directory")
        ->capture_default_str();
    cmd->add_option("--provider", f.provider, "Logit provider")
        ->check(CLI::IsMember({"toy", "bridge"}))
        ->capture_default_str();
    cmd->add_option("--bridge-cmd", f.bridge_cmd, "Shell command starting a bridge");
    cmd->add_option("--toy-model", f.toy_model, "Toy model JSON (from `cid train`)");
    cmd->add_option("--train-file", f.train_file, "Toy training text");
    cmd->add_option("--context-file", f.context_file, "One context per line");
    cmd->add_option("--query-file", f.query_file, "One query per line, or a single line");
    cmd->add_option("--reference-file", f.reference_file, "One reference per line");
    cmd->add_option("--limit", f.limit, "Use only the first N examples");
    cmd->add_option("--max-context", f.max_context, "Truncate contexts to N tokens");
    cmd->add_option("--out", f.out, "Output path, - for stdout")->capture_default_str();
    cmd->add_option("--threads", f.threads, "Worker threads, 0 for all cores");
  };
  auto add_decode = [&f](CLI::App* cmd) {
    cmd->add_option("--lambda", f.lambda, "Interpolation weight")->capture_default_str();
    cmd->add_option("--tau", f.tau, "Temperature")->capture_default_str();
    cmd->add_option("--max-tokens", f.max_tokens, "Tokens to generate")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "Base seed; example i uses seed + i")
        ->capture_default_str();
    cmd->add_flag("--greedy", f.greedy, "Argmax decoding");
    cmd->add_option("--eos", f.eos, "Stop token id");
    cmd->add_option("--epsilon", f.epsilon, "Per-token budget; enables bounded decoding")
        ->each([&f](const std::string&) { f.bounded = true; });
    cmd->add_option("--lambda-max", f.lambda_max, "Upper bound for bounded lambda")
        ->capture_default_str();
  };
  auto add_sweep = [&f](CLI::App* cmd) {
    cmd->add_option("--ngram", f.ngram, "Removed window size")->capture_default_str();
    cmd->add_option("--stride", f.stride, "Window stride")->capture_default_str();
    cmd->add_option("--compute-cap", f.compute_cap, "Refuse runs above this size");
    cmd->add_option("--transcripts", f.transcripts, "Reuse transcripts from `cid decode`");
    cmd->add_option("--format", f.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  CLI::App* decode = app.add_subcommand("decode", "Decode the corpus, write JSONL transcripts");
  add_common(decode);
  add_decode(decode);

  CLI::App* audit = app.add_subcommand("audit", "Exhaustive privacy-loss audit of one example");
  add_common(audit);
  add_decode(audit);
  audit->add_option("--example-index", f.example_index)->capture_default_str();
  audit->add_option("--family", f.family, "none|full|tokens|spans")->capture_default_str();
  audit->add_option("--steps", f.steps, "Generation steps to audit")->capture_default_str();
  audit->add_option("--compute-cap", f.compute_cap, "Refuse audits above this size");

  CLI::App* sweep = app.add_subcommand("sweep", "Per-window influence of one transcript");
  add_common(sweep);
  add_decode(sweep);
  add_sweep(sweep);
  sweep->add_option("--example-index", f.example_index)->capture_default_str();
  sweep->add_option("--heatmap", f.heatmap, "Also write a per-token heatmap JSON");

  CLI::App* profile = app.add_subcommand("profile", "Influence profile along one axis");
  add_common(profile);
  add_decode(profile);
  add_sweep(profile);
  profile->add_option("--axis", f.axis)
      ->check(CLI::IsMember({"response-position", "context-window-position", "lambda",
                             "tau", "context-size", "ngram-size"}))
      ->capture_default_str();
  profile->add_option("--values", f.values, "Comma-separated axis values");
  profile->add_option("--aggregation", f.aggregation, "per-step|per-context")
      ->capture_default_str();

  CLI::App* rouge = app.add_subcommand("rouge", "ROUGE-L F1 of two whitespace-tokenized files");
  rouge->add_option("--candidate", f.candidate)->required();
  rouge->add_option("--reference", f.reference_file)->required();
  rouge->add_option("--out", f.out)->capture_default_str();

  CLI::App* train = app.add_subcommand("train", "Train the toy model and write its JSON");
  add_common(train);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  absl::Status status;
  const std::string name = app.get_subcommands().front()->get_name();
  spdlog::info("running {}", name);
  if (name == "decode") status = CmdDecode(f);
  if (name == "audit") status = CmdAudit(f);
  if (name == "sweep") status = CmdSweep(f);
  if (name == "profile") status = CmdProfile(f);
  if (name == "rouge") status = CmdRouge(f);
  if (name == "train") status = CmdTrain(f);
  if (!status.ok()) {
    std::cerr << "cid " << name << ": " << status.message() << "\n";
    spdlog::debug("status: {}", status.ToString());
  }
  return ExitCodeFor(status);
}

}  // namespace
}  // namespace cid::cli

int main(int argc, char** argv) { return cid::cli::Main(argc, argv); }
