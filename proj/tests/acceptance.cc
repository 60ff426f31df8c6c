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


// Acceptance checks against the shipped seed, fixtures and sample corpus.
// Prints one PASS/FAIL line per criterion; exits non-zero on any failure.

#include <signal.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "semrel/annotation.h"
#include "semrel/corpus.h"
#include "semrel/inventory.h"
#include "semrel/stats.h"
#include "test_support.h"

namespace semrel {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kTol = 0.01;

// Collects the failed sub-checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string &what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string &what) {
    std::ostringstream s;
    s << what << " = " << got << ", want " << want << " +/- " << tol;
    expect(std::fabs(got - want) <= tol + 1e-9, s.str());
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string> &failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

int g_failed = 0;

void report(const std::string &name, const std::function<std::string(Check &)> &body) {
  Check c;
  std::string detail;
  try {
    detail = body(c);
  } catch (const std::exception &e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  std::printf("%s  %s", c.ok() ? "PASS" : "FAIL", name.c_str());
  if (!detail.empty()) std::printf("  (%s)", detail.c_str());
  std::printf("\n");
  for (const std::string &f : c.failures()) std::printf("      - %s\n", f.c_str());
  std::fflush(stdout);
  if (!c.ok()) ++g_failed;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string table1(Check &c) {
  auto start = Clock::now();
  testing::ProcessResult text = testing::run_process(
      {testing::cli_path().string(), "stats", "--table1", "--records",
       testing::fixture_path().string()});
  double elapsed = seconds_since(start);
  c.expect(text.exit_code == 0, "stats --table1 exit code " + std::to_string(text.exit_code));
  c.expect(elapsed < 1.0, "stats --table1 took " + fmt("%.3f s", elapsed));
  for (const char *v : {"72.67", "24.67", "2.66", "35.32", "64.68", "48.65", "51.35"}) {
    c.expect(text.out.find(v) != std::string::npos, std::string("printed table lacks ") + v);
  }
  Json j = Json::parse(testing::run_process({testing::cli_path().string(), "stats", "--table1",
                                             "--json", "--records",
                                             testing::fixture_path().string()})
                           .out);
  c.expect(j["total"] == 300, "total is " + j["total"].dump());
  c.expect(j["direct"]["count"] == 218, "direct count");
  c.expect(j["direct"]["dolce"]["count"] == 77 && j["direct"]["custom"]["count"] == 141,
           "direct split counts");
  c.expect(j["composite"]["count"] == 74, "composite count");
  c.expect(j["composite"]["dolce"]["count"] == 36 && j["composite"]["custom"]["count"] == 38,
           "composite split counts");
  c.expect(j["unclassified"]["count"] == 8, "unclassified count");
  // Published classification table values.
  c.near(j["direct"]["percent"], 72.67, kTol, "direct %");
  c.near(j["composite"]["percent"], 24.67, kTol, "composite %");
  c.near(j["unclassified"]["percent"], 2.66, kTol, "unclassified %");
  c.near(j["direct"]["dolce"]["percent"], 35.32, kTol, "direct DOLCE %");
  c.near(j["direct"]["custom"]["percent"], 64.68, kTol, "direct custom %");
  c.near(j["composite"]["dolce"]["percent"], 48.65, kTol, "composite DOLCE %");
  c.near(j["composite"]["custom"]["percent"], 51.35, kTol, "composite custom %");
  return fmt("%.3f s", elapsed);
}

std::string chain_length_statistic(Check &c) {
  const auto &records = testing::fixture_records();
  uint64_t links = 0;
  uint64_t composite = 0;
  for (const AnnotationRecord &r : records) {
    if (r.assignment && std::holds_alternative<CompositeAssignment>(*r.assignment)) {
      links += std::get<CompositeAssignment>(*r.assignment).chain.size();
      ++composite;
    }
  }
  c.expect(composite == 74, "composite records " + std::to_string(composite));
  c.expect(links == 197, "total links " + std::to_string(links));
  double avg = avg_chain_length(records);
  c.near(avg, 2.66, kTol, "avg_chain_length");
  return std::to_string(links) + "/" + std::to_string(composite) + " = " + fmt("%.2f", avg);
}

std::string frequency_shares(Check &c) {
  const auto &records = testing::fixture_records();
  FrequencyOptions dolce{FrequencyScope::kDirect, OriginFilter::kDolce, true};
  auto d = relation_frequencies(records, testing::seed(), dolce);
  std::vector<std::string> family{"patient", "target"};
  c.expect(d.scope_size == 77, "DOLCE direct scope " + std::to_string(d.scope_size));
  c.expect(d.family_count(family) == 32, "patient/target family count");
  c.near(d.family_share(family), 41.56, kTol, "patient/target family share");

  FrequencyOptions custom{FrequencyScope::kDirect, OriginFilter::kCustom, false};
  auto u = relation_frequencies(records, testing::seed(), custom);
  std::vector<std::string> top{"qualifier", "indirect-target", "ownership"};
  c.expect(u.scope_size == 141, "custom direct scope " + std::to_string(u.scope_size));
  c.expect(u.family_count(top) == 67, "qualifier/indirect-target/ownership count");
  c.near(u.family_share(top), 47.52, kTol, "qualifier/indirect-target/ownership share");
  return "32/77 = " + fmt("%.2f%%", d.family_share(family)) + ", 67/141 = " +
         fmt("%.2f%%", u.family_share(top));
}

std::string relatedness_means(Check &c) {
  auto report = relatedness_report(testing::fixture_records());
  // Published per-relation relatedness means.
  const std::pair<const char *, double> published[] = {
      {"specialisation", 9.5}, {"component-of", 9.0}, {"descriptive-place-of", 9.0},
      {"product", 9.0},        {"use-of", 8.5},       {"part-of", 8.25},
      {"unit-of", 8.25},       {"happens-at", 3.0},   {"involves", 3.5},
      {"result", 3.5},         {"source", 3.66}};
  for (const auto &[rel, mean] : published) {
    auto it = report.by_relation.find(rel);
    if (it == report.by_relation.end()) {
      c.expect(false, std::string("no direct pairs for ") + rel);
      continue;
    }
    c.near(it->second.mean, mean, kTol, rel);
  }
  double direct = report.by_category["direct"].mean;
  double composite = report.by_category["composite"].mean;
  c.expect(direct > composite, "direct mean " + fmt("%.2f", direct) + " <= composite mean " +
                                   fmt("%.2f", composite));
  return "direct " + fmt("%.2f", direct) + " > composite " + fmt("%.2f", composite);
}

std::string inventory_integrity(Check &c) {
  const Inventory &inv = testing::seed();
  auto violations = validate_inventory(inv);
  c.expect(violations.empty(), std::to_string(violations.size()) + " inventory violation(s)");

  // Custom relations of the published relation table.
  const std::set<std::string> custom_expected = {
      "affects", "common-ownership", "condition", "co-occurring-qualifier", "coreference",
      "correlated-variation", "destination", "indirect-ownership", "indirect-qualifier",
      "indirect-reference", "indirect-result", "indirect-target", "instantiation",
      "membership", "opposition", "ownership", "qualifier", "represented-in",
      "sibling-concept", "source", "specialisation", "theme-component", "used-for",
      "value-component"};
  std::set<std::string> custom;
  for (const RelationDef &r : inv.relations()) {
    if (r.origin == Origin::kCustom) custom.insert(r.id);
  }
  c.expect(custom == custom_expected,
           "custom relation set has " + std::to_string(custom.size()) + " members");

  // DOLCE relations named in the source text.
  for (const char *id :
       {"part", "part-of", "participant", "patient", "patient-of", "target", "target-of",
        "theme", "performed-by", "performs", "prescribes", "instrument", "resource",
        "references", "co-participates-with", "generic-location", "precedes",
        "temporally-coincides", "temporally-includes", "temporally-overlaps",
        "component-of", "descriptive-place-of", "product", "result", "use-of", "unit-of",
        "happens-at", "involves"}) {
    const RelationDef *r = inv.find_relation(id);
    c.expect(r != nullptr && r->origin == Origin::kDolce, std::string("DOLCE relation ") + id);
  }

  size_t inverses = 0;
  for (const RelationDef &r : inv.relations()) {
    auto s = inv.inverse_of(r.id);
    if (!s) continue;
    ++inverses;
    c.expect(inv.inverse_of(*s) == r.id, "inverse involution fails for " + r.id);
    const RelationDef &t = inv.get_relation(*s);
    c.expect(t.domain == r.range && t.range == r.domain, "signature swap fails for " + r.id);
  }
  return std::to_string(inv.relations().size()) + " relations, " + std::to_string(custom.size()) +
         " custom, " + std::to_string(inverses) + " with inverses";
}

std::string candidate_oracle(Check &c) {
  std::mt19937_64 rng(20260101);
  auto start = Clock::now();
  size_t pairs = 0;
  const int inventories = 1000;
  for (int i = 0; i < inventories; ++i) {
    InventoryDocument doc = testing::random_inventory(rng, 12, 20);
    Inventory inv = Inventory::build(doc);
    for (const OntoClass &a : doc.classes) {
      for (const OntoClass &b : doc.classes) {
        for (bool both : {false, true}) {
          ++pairs;
          if (inv.candidate_relations(a.id, b.id, both) !=
              testing::brute_force_candidates(doc, a.id, b.id, both)) {
            c.expect(false, "mismatch in inventory " + std::to_string(i) + " for (" + a.id +
                                ", " + b.id + ")");
          }
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "took " + fmt("%.2f s", elapsed));
  return std::to_string(inventories) + " inventories, " + std::to_string(pairs) +
         " queries, " + fmt("%.2f s", elapsed);
}

std::string chain_validation(Check &c) {
  const Inventory &inv = testing::seed();
  auto type = testing::mention("type", "description");
  auto financing = testing::mention("financing", "action");
  auto payments = testing::mention("payments", "action");
  auto month = testing::mention("month", "time-interval");
  const std::vector<RelationLink> chain = {
      testing::link(type, "references", financing),
      testing::link(financing, "used-for", payments, Direction::kInverse),
      testing::link(payments, "happens-at", month)};

  auto kinds = [](const std::vector<AnnotationViolation> &vs) {
    std::set<ViolationKind> out;
    for (const auto &v : vs) out.insert(v.kind);
    return out;
  };
  auto valid = validate_chain(chain, type, month, inv);
  c.expect(valid.empty(), std::to_string(valid.size()) + " violation(s) on the valid chain");
  c.expect(chain_length(CompositeAssignment{chain}) == 3, "chain length is not 3");

  auto swapped = kinds(validate_chain(chain, month, type, inv));
  c.expect(swapped == std::set<ViolationKind>{ViolationKind::kStartMismatch,
                                              ViolationKind::kEndMismatch},
           "endpoint swap not reported as start/end mismatch");

  auto broken_chain = chain;
  broken_chain.erase(broken_chain.begin() + 1);
  auto broken = kinds(validate_chain(broken_chain, type, month, inv));
  c.expect(broken == std::set<ViolationKind>{ViolationKind::kBrokenContiguity},
           "dropped link not reported as broken contiguity");

  auto typed_chain = chain;
  typed_chain[2].source.assigned_class = "quality";
  typed_chain[2].target.assigned_class = "quality";
  auto typed = kinds(validate_chain(typed_chain, type, month, inv));
  c.expect(typed == std::set<ViolationKind>{ViolationKind::kSignature},
           "happens-at over two qualities not reported as a signature violation");
  return "valid + 3 mutations rejected";
}

std::string sampler_determinism(Check &c) {
  std::vector<std::string> argv = {testing::cli_path().string(), "sample", "--seed", "42",
                                   "--n", "25"};
  testing::ProcessResult a = testing::run_process(argv);
  testing::ProcessResult b = testing::run_process(argv);
  c.expect(a.exit_code == 0 && b.exit_code == 0, "sample exited non-zero");
  c.expect(a.out == b.out, "two runs differ");
  std::string golden =
      testing::read_file(fs::path(SEMREL_TEST_SOURCE_DIR) / "golden" / "sample_seed42_n25.tsv");
  c.expect(a.out == golden, "output differs from the checked-in golden file");

  auto docs = load_corpus_dir(testing::corpus_dir());
  GlossaryIndex index = build_glossary_index(docs);
  std::istringstream lines(a.out);
  size_t n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    std::string surface = line.substr(line.rfind('\t') + 1);
    c.expect(index.contains(normalize_term(surface)), "'" + surface + "' is not glossary-listed");
  }
  c.expect(n == 25, std::to_string(n) + " lines");
  return std::to_string(n) + " terms, " + std::to_string(a.out.size()) + " bytes";
}

// ---- crash recovery ------------------------------------------------------

struct Server {
  pid_t pid = -1;
  int port = 0;
};

Server start_server(const fs::path &dir, const std::map<std::string, std::string> &env) {
  fs::path err = dir / ("serve-" + std::to_string(::time(nullptr)) + "-" +
                        std::to_string(std::random_device{}()) + ".log");
  Server s;
  s.pid = testing::spawn_process({testing::cli_path().string(), "serve", "--listen",
                                  "127.0.0.1:0", "--store", (dir / "records.jsonl").string()},
                                 env, err);
  std::string line = testing::wait_for_line(err, "listening on", 10000);
  if (line.empty()) throw std::runtime_error("service did not start: " + testing::read_file(err));
  size_t colon = line.rfind(':', line.find(" ("));
  s.port = std::stoi(line.substr(colon + 1));
  return s;
}

// Order-independent hash of a record set as served by the API.
std::string api_digest(const std::map<std::string, Json> &records) {
  uint64_t h = 1469598103934665603ULL;
  for (const auto &[id, j] : records) {
    for (char ch : j.dump() + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::string, Json> fetch_all(int port) {
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/records");
  if (!res || res->status != 200) throw std::runtime_error("GET /records failed");
  std::map<std::string, Json> out;
  Json body = Json::parse(res->body);
  for (const Json &r : body["records"]) out[r["id"].get<std::string>()] = r;
  return out;
}

// Issues creates and updates until a request goes unanswered or `limit` is
// reached. Returns the acknowledged state.
void write_workload(int port, std::map<std::string, Json> *acked, int limit, int salt) {
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(5, 0);
  for (int i = 0; i < limit; ++i) {
    httplib::Result res;
    if (i % 3 == 2 && !acked->empty()) {
      auto it = std::next(acked->begin(), (i * 7 + salt) % acked->size());
      Json body = {{"annotator", "ann-" + std::to_string(salt)}, {"score", (i + salt) % 11},
                   {"version", (*it->second.find("version")).get<uint64_t>()}};
      res = client.Post("/records/" + it->first + "/relatedness", body.dump(), "application/json");
    } else {
      std::string sentence = "crash:" + std::to_string(salt * 1000 + i);
      Json body = {{"first", {{"term", "bank"}, {"sentence", sentence}, {"class", "social-role"}}},
                   {"second", {{"term", "loan"}, {"sentence", sentence}, {"class", "action"}}},
                   {"assignment", {{"kind", "unclassified"}, {"reason", "too-distant"}}}};
      res = client.Post("/records", body.dump(), "application/json");
    }
    if (!res) return;
    if (res->status != 200 && res->status != 201) {
      throw std::runtime_error("unexpected status " + std::to_string(res->status) + ": " +
                               res->body);
    }
    Json j = Json::parse(res->body);
    (*acked)[j["id"].get<std::string>()] = j;
  }
}

std::string crash_recovery(Check &c) {
  testing::TempDir dir;
  std::map<std::string, Json> acked;

  // Phase 1: the process dies half-way through its 20th append.
  Server s = start_server(dir.path(), {{"SEMREL_FAULT_TORN_WRITE", "20"}});
  write_workload(s.port, &acked, 100, 1);
  int status = testing::wait_process(s.pid);
  c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 137,
           "faulted service did not die mid-write");
  std::string log = testing::read_file(dir / "records.jsonl");
  c.expect(!log.empty() && log.back() != '\n', "log has no torn tail");
  c.expect(acked.size() > 5, "too few acknowledged records before the fault");
  std::string before = api_digest(acked);

  s = start_server(dir.path(), {});
  std::string after = api_digest(fetch_all(s.port));
  c.expect(before == after, "after torn write: " + after + " != " + before);

  // Phase 2: more traffic, then SIGKILL.
  write_workload(s.port, &acked, 30, 2);
  std::string before2 = api_digest(acked);
  ::kill(s.pid, SIGKILL);
  testing::wait_process(s.pid);
  s = start_server(dir.path(), {});
  std::string after2 = api_digest(fetch_all(s.port));
  c.expect(before2 == after2, "after SIGKILL: " + after2 + " != " + before2);
  ::kill(s.pid, SIGTERM);
  testing::wait_process(s.pid);
  return std::to_string(acked.size()) + " records, digest " + after2;
}

}  // namespace
}  // namespace semrel

int main() {
  using namespace semrel;
  report("table1-reproduction", table1);
  report("chain-length-statistic", chain_length_statistic);
  report("frequency-shares", frequency_shares);
  report("relatedness-means", relatedness_means);
  report("inventory-integrity", inventory_integrity);
  report("candidate-oracle-equivalence", candidate_oracle);
  report("chain-validation", chain_validation);
  report("sampler-determinism", sampler_determinism);
  report("crash-recovery", crash_recovery);
  std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
