// Copyright 2026 The semrel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <signal.h>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "semrel/record_store.h"
#include "test_support.h"

namespace semrel {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using testing::ProcessResult;

ProcessResult cli(std::vector<std::string> args, const std::map<std::string, std::string> &env = {}) {
  args.insert(args.begin(), testing::cli_path().string());
  return testing::run_process(args, env);
}

std::string fixture() { return testing::fixture_path().string(); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"--help"}).exit_code, 0);
  EXPECT_EQ(cli({}).exit_code, 2);
  EXPECT_EQ(cli({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(cli({"sample"}).exit_code, 2);
  EXPECT_EQ(cli({"stats", "--records", fixture(), "--table1", "--chain-length"}).exit_code, 2);
  ProcessResult r = cli({"stats", "--records", fixture(), "--frequencies", "--scope", "bogus"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
}

TEST(Cli, IngestTotals) {
  ProcessResult r = cli({"ingest", "--json"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["sources"].size(), 3u);
  uint64_t sum = 0;
  for (const Json &s : j["sources"]) sum += s["tokens"].get<uint64_t>();
  EXPECT_EQ(j["total_tokens"], sum);
  EXPECT_NE(cli({"ingest"}).out.find("total"), std::string::npos);
  EXPECT_EQ(cli({"ingest", "--corpus", "/nonexistent"}).exit_code, 1);
}

TEST(Cli, SampleIsByteStable) {
  ProcessResult a = cli({"sample", "--seed", "42", "--n", "25"});
  ProcessResult b = cli({"sample", "--seed", "42", "--n", "25"});
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 25);
  ProcessResult env = cli({"sample", "--n", "25"}, {{"SEMREL_SEED", "42"}});
  EXPECT_EQ(env.out, a.out);
  EXPECT_NE(cli({"sample", "--seed", "7", "--n", "25"}).out, a.out);
  EXPECT_EQ(cli({"sample", "--n", "0"}).out, "");
  Json j = Json::parse(cli({"sample", "--n", "5", "--json"}).out);
  EXPECT_EQ(j["candidates"].size(), 5u);
  EXPECT_EQ(cli({"sample", "--n", "100000"}).exit_code, 1);
}

TEST(Cli, ValidateSeedAndFixture) {
  ProcessResult r = cli({"validate", "--records", fixture()});
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("300 records"), std::string::npos);
}

TEST(Cli, ValidateReportsBrokenInputs) {
  testing::TempDir dir;
  std::string inv = testing::read_file(testing::seed_path());
  size_t at = inv.find("  inverse = performed-by");
  ASSERT_NE(at, std::string::npos);
  inv.replace(at, std::string("  inverse = performed-by").size(), "  inverse = patient");
  testing::write_file(dir / "bad.inv", inv);
  ProcessResult r = cli({"validate", "--inventory", (dir / "bad.inv").string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("violation"), std::string::npos);

  // A record whose chain endpoints were swapped.
  std::vector<AnnotationRecord> records = read_store(testing::fixture_path());
  auto it = std::find_if(records.begin(), records.end(), [](const AnnotationRecord &x) {
    return x.assignment && std::holds_alternative<CompositeAssignment>(*x.assignment);
  });
  ASSERT_NE(it, records.end());
  std::swap(it->first, it->second);
  RecordStore store(dir / "bad.jsonl");
  store.create(*it);
  r = cli({"validate", "--records", (dir / "bad.jsonl").string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("start-mismatch"), std::string::npos) << r.out;
}

TEST(Cli, StatsTable) {
  ProcessResult r = cli({"stats", "--records", fixture()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  for (const char *v : {"72.67", "24.67", "2.66", "35.32", "64.68", "48.65", "51.35"}) {
    EXPECT_NE(r.out.find(v), std::string::npos) << v;
  }
  EXPECT_EQ(cli({"stats", "--records", fixture(), "--table1"}).out, r.out);
  Json j = Json::parse(cli({"stats", "--records", fixture(), "--json"}).out);
  EXPECT_EQ(j["total"], 300);
  EXPECT_EQ(cli({"stats", "--records", fixture()}, {{"SEMREL_STORE", "/nonexistent"}}).exit_code,
            0);
  EXPECT_EQ(cli({"stats"}, {{"SEMREL_STORE", fixture()}}).out, r.out);
  EXPECT_EQ(cli({"stats", "--records", "/nonexistent"}).exit_code, 1);
}

TEST(Cli, StatsReports) {
  Json f = Json::parse(cli({"stats", "--records", fixture(), "--frequencies", "--origin", "dolce",
                            "--fold", "--json"})
                           .out);
  EXPECT_EQ(f["scope_size"], 77);
  Json c = Json::parse(cli({"stats", "--records", fixture(), "--chain-length", "--json"}).out);
  EXPECT_EQ(c["total_links"], 197);
  EXPECT_DOUBLE_EQ(c["average"].get<double>(), 2.66);
  ProcessResult rel = cli({"stats", "--records", fixture(), "--relatedness"});
  EXPECT_EQ(rel.exit_code, 0);
  EXPECT_NE(rel.out.find("specialisation"), std::string::npos);
}

TEST(Cli, ExportRoundTrip) {
  testing::TempDir dir;
  ProcessResult r = cli({"export", "--records", fixture(), "--out", (dir / "out.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  Json j = Json::parse(testing::read_file(dir / "out.json"));
  EXPECT_EQ(j["record_count"], 300);
  EXPECT_EQ(j["records"].size(), 300u);
  EXPECT_EQ(Json::parse(cli({"export", "--records", fixture()}).out), j);
}

TEST(Cli, ServeStartsAndStopsOnSignal) {
  testing::TempDir dir;
  pid_t pid = testing::spawn_process(
      {testing::cli_path().string(), "serve", "--listen", "127.0.0.1:0", "--store",
       (dir / "records.jsonl").string()},
      {}, dir / "stderr.txt");
  std::string line = testing::wait_for_line(dir / "stderr.txt", "listening on", 10000);
  ASSERT_NE(line, "") << testing::read_file(dir / "stderr.txt");
  EXPECT_NE(line.find("(0 records)"), std::string::npos);
  ::kill(pid, SIGTERM);
  int status = testing::wait_process(pid);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_NE(testing::read_file(dir / "stderr.txt").find("shutting down"), std::string::npos);
}

TEST(Cli, ServeRejectsBadConfig) {
  testing::TempDir dir;
  ProcessResult r = cli({"serve", "--listen", "127.0.0.1:0", "--corpus", "/nonexistent",
                         "--store", (dir / "s.jsonl").string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("corpus"), std::string::npos);
  r = cli({"serve", "--listen", "nonsense", "--store", (dir / "s.jsonl").string()});
  EXPECT_NE(r.exit_code, 0);
}

}  // namespace
}  // namespace semrel
