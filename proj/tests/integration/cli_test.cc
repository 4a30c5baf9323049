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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;
using Json = nlohmann::ordered_json;

struct Result {
  int exit_code = -1;
  std::string stdout_text;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           absl::StrCat("cid_cli_test_", ::getpid(), "_",
                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  Result Run(const std::string& args) const {
    const std::string cmd = absl::StrCat(CID_CLI_PATH, " ", args, " 2>",
                                         Path("stderr.txt"));
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.stdout_text.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, DecodeAtLambdaZeroReportsZeroInfluence) {
  Result r = Run(absl::StrCat("decode --lambda 0 --limit 10 --out ", Path("t.jsonl")));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_THAT(r.stdout_text, HasSubstr("mean_influence=0 "));
  EXPECT_THAT(r.stdout_text, HasSubstr("mean_rouge_l="));
}

TEST_F(CliTest, BoundedDecodeRecordsRespectHalfEpsilon) {
  ASSERT_EQ(Run(absl::StrCat("decode --epsilon 0.5 --limit 20 --out ", Path("t.jsonl")))
                .exit_code,
            0);
  int lines = 0;
  for (absl::string_view line : absl::StrSplit(Read("t.jsonl"), '\n', absl::SkipEmpty())) {
    Json t = Json::parse(line);
    EXPECT_EQ(t["schema"], "cid.transcript");
    EXPECT_EQ(t["budget"]["epsilon"], 0.5);
    for (const Json& rec : t["records"]) {
      EXPECT_LE(rec["bound"].get<double>(), 0.25 + 1e-9);
    }
    ++lines;
  }
  EXPECT_EQ(lines, 20);
}

TEST_F(CliTest, DecodeFullCorpusWithDefaultSettings) {
  Result r = Run(absl::StrCat("decode --lambda 1.5 --tau 0.8 --max-tokens 50 --out ",
                              Path("t.jsonl")));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_THAT(r.stdout_text, StartsWith("transcripts=120 tokens=6000 "));
}

TEST_F(CliTest, AuditSaturatedBudgetEqualsPlainAudit) {
  const std::string common = "audit --max-context 8 --example-index 3 --steps 2 --lambda 1";
  ASSERT_EQ(Run(absl::StrCat(common, " --epsilon 1e6 --lambda-max 1 --out ",
                             Path("bounded.json")))
                .exit_code,
            0);
  ASSERT_EQ(Run(absl::StrCat(common, " --out ", Path("plain.json"))).exit_code, 0);
  Json bounded = Json::parse(Read("bounded.json"));
  Json plain = Json::parse(Read("plain.json"));
  EXPECT_EQ(bounded["max_loss"], plain["max_loss"]);
  EXPECT_EQ(bounded["witness"], plain["witness"]);
  EXPECT_EQ(bounded["config"]["budget"]["epsilon"], 1e6);
}

TEST_F(CliTest, AuditWithinBudgetAndEmptyFamily) {
  ASSERT_EQ(Run(absl::StrCat("audit --epsilon 1 --max-context 8 --out ", Path("a.json")))
                .exit_code,
            0);
  EXPECT_LE(Json::parse(Read("a.json"))["max_loss"].get<double>(), 1.0 + 1e-6);
  ASSERT_EQ(Run(absl::StrCat("audit --family none --out ", Path("n.json"))).exit_code, 0);
  EXPECT_EQ(Json::parse(Read("n.json"))["max_loss"].get<double>(), 0.0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("decode --tau 0 --limit 1 --out -").exit_code, 2);
  EXPECT_EQ(Run("decode --context-file /nonexistent --query-file /nonexistent").exit_code, 2);
  EXPECT_EQ(Run("decode --no-such-flag").exit_code, 2);
  EXPECT_EQ(Run("profile --axis lambda --values 0.5,x").exit_code, 2);
  EXPECT_EQ(Run("decode --provider bridge --bridge-cmd 'exit 3'").exit_code, 3);
  const std::string dying = absl::StrCat("python3 ", CID_TEST_FIXTURES,
                                         "/fake_bridge.py die-after=3");
  std::ofstream(Path("ctx.txt")) << "a bb ccc\n";
  std::ofstream(Path("q.txt")) << "dddd\n";
  EXPECT_EQ(Run(absl::StrCat("decode --provider bridge --bridge-cmd '", dying,
                             "' --context-file ", Path("ctx.txt"), " --query-file ",
                             Path("q.txt"), " --out ", Path("t.jsonl")))
                .exit_code,
            3);
  EXPECT_EQ(Run("audit --epsilon 1 --compute-cap 100 --out -").exit_code, 4);
  EXPECT_EQ(Run("sweep --ngram 1 --compute-cap 5 --out -").exit_code, 4);
}

TEST_F(CliTest, BridgeProviderRunsEndToEnd) {
  const std::string bridge =
      absl::StrCat("python3 ", CID_TEST_FIXTURES, "/fake_bridge.py ok");
  std::ofstream(Path("ctx.txt")) << "a bb ccc dddd\nbb a\n";
  std::ofstream(Path("q.txt")) << "eeeee a\n";
  Result r = Run(absl::StrCat("decode --provider bridge --bridge-cmd '", bridge,
                              "' --context-file ", Path("ctx.txt"), " --query-file ",
                              Path("q.txt"), " --max-tokens 5 --out ", Path("t.jsonl")));
  ASSERT_EQ(r.exit_code, 0) << Read("stderr.txt");
  EXPECT_THAT(r.stdout_text, StartsWith("transcripts=2 tokens=10 "));
  EXPECT_THAT(Read("t.jsonl"), HasSubstr("\"provider\":\"bridge:fake\""));
}

TEST_F(CliTest, SweepEmitsPerWindowCsvAndHeatmap) {
  Result r = Run(absl::StrCat("sweep --ngram 4 --max-tokens 5 --heatmap ",
                              Path("heat.json"), " --out -"));
  ASSERT_EQ(r.exit_code, 0);
  std::vector<std::string> lines = absl::StrSplit(r.stdout_text, '\n', absl::SkipEmpty());
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "# schema=cid.sweep/1");
  EXPECT_THAT(lines[1], StartsWith("# config={\"command\":\"sweep\""));
  EXPECT_EQ(lines[2], "t,token,n,window_start,influence,is_step_max");
  Json heat = Json::parse(Read("heat.json"));
  EXPECT_EQ(heat["schema"], "cid.heatmap");
  EXPECT_FALSE(heat["cells"].empty());
}

TEST_F(CliTest, SweepReusesDecodedTranscripts) {
  ASSERT_EQ(Run(absl::StrCat("decode --lambda 1.5 --limit 3 --out ", Path("t.jsonl")))
                .exit_code,
            0);
  Result from_file = Run(absl::StrCat("sweep --ngram 2 --example-index 2 --transcripts ",
                                      Path("t.jsonl"), " --limit 3 --out -"));
  Result direct = Run("sweep --ngram 2 --example-index 2 --lambda 1.5 --out -");
  ASSERT_EQ(from_file.exit_code, 0) << Read("stderr.txt");
  ASSERT_EQ(direct.exit_code, 0);
  // Same rows; the embedded config differs only in how inputs were named.
  auto rows = [](const std::string& csv) {
    return csv.substr(csv.find("t,token,n"));
  };
  EXPECT_TRUE(rows(from_file.stdout_text) == rows(direct.stdout_text));
}

TEST_F(CliTest, ProfileLambdaHasThreeRows) {
  Result r = Run("profile --axis lambda --values 0.5,1.0,1.5 --limit 10 --out -");
  ASSERT_EQ(r.exit_code, 0);
  std::vector<std::string> lines = absl::StrSplit(r.stdout_text, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[2], "axis,aggregation,axis_value,mean_influence,count,mean_rouge_l");
  EXPECT_THAT(lines[3], StartsWith("lambda,per-context,0.5,"));
  EXPECT_THAT(lines[5], StartsWith("lambda,per-context,1.5,"));
}

TEST_F(CliTest, ProfileJsonEmbedsConfig) {
  Result r = Run("profile --axis ngram-size --values 1,3 --aggregation per-context "
                 "--limit 3 --max-tokens 5 --format json --out -");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.stdout_text);
  EXPECT_EQ(doc["schema"], "cid.profile");
  EXPECT_EQ(doc["aggregation"], "per-context");
  EXPECT_EQ(doc["config"]["profile"]["aggregation"], "per-context");
  EXPECT_EQ(doc["points"].size(), 2u);
}

TEST_F(CliTest, RougePrintsFiveDecimals) {
  std::ofstream(Path("c.txt")) << "the cat sat\n";
  std::ofstream(Path("r.txt")) << "the cat\n";
  Result r = Run(absl::StrCat("rouge --candidate ", Path("c.txt"), " --reference ",
                              Path("r.txt")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.stdout_text, "0.80000\n");
}

TEST_F(CliTest, TrainedModelReloadsWithSameIdentity) {
  ASSERT_EQ(Run(absl::StrCat("train --out ", Path("m.json"))).exit_code, 0);
  ASSERT_EQ(Run(absl::StrCat("decode --limit 2 --out ", Path("a.jsonl"))).exit_code, 0);
  ASSERT_EQ(Run(absl::StrCat("decode --limit 2 --toy-model ", Path("m.json"), " --out ",
                             Path("b.jsonl")))
                .exit_code,
            0);
  EXPECT_TRUE(Read("a.jsonl") == Read("b.jsonl"));
}

TEST_F(CliTest, IdenticalRunsAreByteIdentical) {
  for (const char* args : {"decode --limit 5", "audit --epsilon 0.5 --max-context 6",
                           "sweep --ngram 3", "profile --axis tau --values 0.4,0.8 --limit 5"}) {
    ASSERT_EQ(Run(absl::StrCat(args, " --out ", Path("one"))).exit_code, 0) << args;
    ASSERT_EQ(Run(absl::StrCat(args, " --threads 3 --out ", Path("two"))).exit_code, 0);
    EXPECT_TRUE(Read("one") == Read("two")) << args;
  }
}

}  // namespace
