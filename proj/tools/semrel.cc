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


// Command-line front end: ingest, sample, validate, stats, serve, export.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "semrel/alignment.h"
#include "semrel/annotation.h"
#include "semrel/corpus.h"
#include "semrel/inventory.h"
#include "semrel/record_codec.h"
#include "semrel/record_store.h"
#include "semrel/report.h"
#include "semrel/service.h"
#include "semrel/stats.h"

namespace fs = std::filesystem;
using namespace semrel;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

// Source tree, then <prefix>/share/semrel next to the running binary, then
// the configured install prefix.
fs::path data_dir() {
  std::vector<fs::path> dirs = {SEMREL_SOURCE_DATA_DIR};
  std::error_code ec;
  fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) dirs.push_back(exe.parent_path().parent_path() / "share" / "semrel");
  dirs.push_back(SEMREL_INSTALL_DATA_DIR);
  for (const fs::path &dir : dirs) {
    if (fs::is_directory(dir)) return dir;
  }
  return "data";
}

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  ServiceConfig config;
  fs::path records;
  bool json = false;
  bool skip_coverage = false;
  size_t n = 0;
  std::string stats_kind = "table1";
  std::string scope = "direct";
  std::string origin = "all";
  bool fold = false;
  fs::path out;
};

int cmd_ingest(const Options &o) {
  auto docs = load_corpus_dir(o.config.corpus);
  CorpusStats st = corpus_stats(docs);
  if (o.json) {
    nlohmann::ordered_json j;
    j["total_sentences"] = st.total_sentences;
    j["total_tokens"] = st.total_tokens;
    j["sources"] = nlohmann::ordered_json::array();
    for (const SourceStats &s : st.sources) {
      j["sources"].push_back(
          {{"id", s.id}, {"kind", to_string(s.kind)}, {"sentences", s.sentences},
           {"tokens", s.tokens}});
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  for (const SourceStats &s : st.sources) {
    std::cout << s.id << "\t" << to_string(s.kind) << "\t" << s.sentences << " sentences\t"
              << s.tokens << " tokens\n";
  }
  std::cout << "total\t" << st.sources.size() << " sources\t" << st.total_sentences
            << " sentences\t" << st.total_tokens << " tokens\n";
  return kOk;
}

int cmd_sample(const Options &o) {
  if (o.n == 0) return kOk;
  CorpusSnapshot corpus(load_corpus_dir(o.config.corpus));
  if (!corpus.glossary()) throw Error("corpus has no glossary entries");
  auto picks = sample_first_terms(corpus.documents(), *corpus.glossary(), o.config.seed, o.n);
  if (o.json) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const PairCandidate &c : picks) {
      list.push_back({{"sentence", c.sentence}, {"first_term", c.first_term},
                      {"surface", c.surface}});
    }
    std::cout << nlohmann::ordered_json{{"seed", o.config.seed}, {"candidates", list}}.dump(2)
              << "\n";
    return kOk;
  }
  for (const PairCandidate &c : picks) {
    std::cout << c.sentence << "\t" << c.first_term << "\t" << c.surface << "\n";
  }
  return kOk;
}

int cmd_validate(const Options &o) {
  size_t problems = 0;
  auto report = [&](const std::string &line) {
    std::cout << line << "\n";
    ++problems;
  };

  InventoryDocument doc = parse_inventory(read_text(o.config.inventory));
  for (const Violation &v : validate_document(doc)) {
    report("inventory: " + std::string(to_string(v.rule)) + " " + v.entity + ": " + v.message);
  }
  if (problems > 0) {
    std::cout << problems << " violation(s)\n";
    return kViolations;
  }
  Inventory inv = Inventory::build(std::move(doc));
  if (!o.skip_coverage) {
    for (const std::string &p : check_seed_coverage(inv)) report("inventory: coverage: " + p);
  }
  if (!o.config.alignment.empty()) {
    try {
      load_alignment_file(o.config.alignment.string(), inv);
    } catch (const AlignmentError &e) {
      report(std::string("alignment: ") + e.what());
    }
  }
  size_t record_count = 0;
  if (!o.records.empty()) {
    std::unique_ptr<CorpusSnapshot> corpus;
    if (!o.config.corpus.empty() && fs::is_directory(o.config.corpus)) {
      corpus = std::make_unique<CorpusSnapshot>(load_corpus_dir(o.config.corpus));
    }
    std::vector<AnnotationRecord> records = read_store(o.records);
    record_count = records.size();
    for (const AnnotationRecord &r : records) {
      for (const AnnotationViolation &v : validate_record(r, inv, corpus.get())) {
        std::string where = v.link >= 0 ? " link " + std::to_string(v.link) : "";
        report("record " + r.id + ": " + std::string(to_string(v.kind)) + where + ": " +
               v.message);
      }
    }
  }
  if (problems > 0) {
    std::cout << problems << " violation(s)\n";
    return kViolations;
  }
  std::cout << "ok: inventory " << inv.version() << " (" << inv.classes().size() << " classes, "
            << inv.relations().size() << " relations), " << record_count << " records\n";
  return kOk;
}

int cmd_stats(const Options &o) {
  Inventory inv = load_inventory_file(o.config.inventory.string());
  std::vector<AnnotationRecord> records = read_store(o.records);
  if (o.stats_kind == "table1") {
    ClassificationSummary s = summarize(records, inv);
    std::cout << (o.json ? render_json(s) + "\n" : render_text(s));
  } else if (o.stats_kind == "frequencies") {
    FrequencyOptions opts;
    opts.scope = parse_frequency_scope(o.scope);
    opts.origin = parse_origin_filter(o.origin);
    opts.fold_inverses = o.fold;
    RelationFrequencyReport r = relation_frequencies(records, inv, opts);
    std::cout << (o.json ? render_json(r) + "\n" : render_text(r));
  } else if (o.stats_kind == "chain-length") {
    ChainLengthStats s = chain_length_stats(records);
    std::cout << (o.json ? render_json(s) + "\n" : render_text(s));
  } else {
    RelatednessByRelation r = relatedness_report(records);
    std::cout << (o.json ? render_json(r) + "\n" : render_text(r, &inv));
  }
  return kOk;
}

int cmd_export(const Options &o) {
  Inventory inv = load_inventory_file(o.config.inventory.string());
  std::string doc = export_dataset(read_store(o.records), inv.version()) + "\n";
  if (o.out.empty()) {
    std::cout << doc;
    return kOk;
  }
  std::ofstream out(o.out, std::ios::binary);
  out << doc;
  if (!out) throw Error("cannot write " + o.out.string());
  return kOk;
}

int cmd_serve(const Options &o) {
  StoreOptions store_options;
  if (const char *torn = std::getenv("SEMREL_FAULT_TORN_WRITE")) {
    store_options.torn_write_at = std::strtoull(torn, nullptr, 10);
  }
  return run_service(o.config, store_options, std::cerr);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"semrel: semantic relation annotation toolkit"};
  app.require_subcommand(1);
  Options o;
  fs::path data = data_dir();
  o.config.inventory = data / "inventory" / "seed.inv";
  o.config.alignment = data / "alignment" / "sample.aln";
  o.config.corpus = data / "corpus";
  o.config.store = "semrel-records.jsonl";

  auto add_inventory = [&](CLI::App *c) {
    c->add_option("--inventory", o.config.inventory, "Relation inventory file")
        ->envname("SEMREL_INVENTORY")
        ->capture_default_str();
  };
  auto add_alignment = [&](CLI::App *c) {
    c->add_option("--alignment", o.config.alignment, "Sense alignment table")
        ->envname("SEMREL_ALIGNMENT")
        ->capture_default_str();
  };
  auto add_corpus = [&](CLI::App *c) {
    c->add_option("--corpus", o.config.corpus, "Corpus directory")
        ->envname("SEMREL_CORPUS")
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App *c) {
    c->add_option("--seed", o.config.seed, "Sampler seed")
        ->envname("SEMREL_SEED")
        ->capture_default_str();
  };
  auto add_records = [&](CLI::App *c, bool required) {
    auto *opt = c->add_option("--records", o.records, "Record log (JSONL) or store path")
                    ->envname("SEMREL_STORE");
    if (required) opt->required();
  };
  auto add_json = [&](CLI::App *c) {
    c->add_flag("--json", o.json, "Emit JSON instead of a text table");
  };

  std::function<int(const Options &)> run;

  auto *ingest = app.add_subcommand("ingest", "Load the corpus and report token counts");
  add_corpus(ingest);
  add_json(ingest);
  ingest->callback([&] { run = cmd_ingest; });

  auto *sample = app.add_subcommand("sample", "Draw glossary-constrained first terms");
  add_corpus(sample);
  add_seed(sample);
  add_json(sample);
  sample->add_option("--n", o.n, "Number of candidates")->required();
  sample->callback([&] { run = cmd_sample; });

  auto *validate = app.add_subcommand("validate", "Lint the inventory, alignment and dataset");
  add_inventory(validate);
  add_alignment(validate);
  add_corpus(validate);
  add_records(validate, false);
  validate->add_flag("--skip-coverage", o.skip_coverage,
                     "Do not require the seed relation set (for custom inventories)");
  validate->callback([&] { run = cmd_validate; });

  auto *stats = app.add_subcommand("stats", "Aggregate reports over a dataset");
  add_inventory(stats);
  add_records(stats, true);
  add_json(stats);
  auto *kinds = stats->add_option_group("report");
  kinds->add_flag_callback("--table1", [&] { o.stats_kind = "table1"; },
                           "Classification summary (default)");
  kinds->add_flag_callback("--frequencies", [&] { o.stats_kind = "frequencies"; },
                           "Relation frequency shares");
  kinds->add_flag_callback("--chain-length", [&] { o.stats_kind = "chain-length"; },
                           "Average composite chain length");
  kinds->add_flag_callback("--relatedness", [&] { o.stats_kind = "relatedness"; },
                           "Relatedness means per relation and category");
  kinds->require_option(0, 1);
  stats->add_option("--scope", o.scope, "direct | composite-first-pair | composite-all-links")
      ->capture_default_str();
  stats->add_option("--origin", o.origin, "all | dolce | custom")->capture_default_str();
  stats->add_flag("--fold", o.fold, "Merge each relation with its inverse");
  stats->callback([&] { run = cmd_stats; });

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  add_inventory(serve);
  add_alignment(serve);
  add_corpus(serve);
  add_seed(serve);
  serve->add_option("--store", o.config.store, "Record log path")
      ->envname("SEMREL_STORE")
      ->capture_default_str();
  serve->add_option("--listen", o.config.listen, "host:port")
      ->envname("SEMREL_LISTEN")
      ->capture_default_str();
  serve->callback([&] { run = cmd_serve; });

  auto *exp = app.add_subcommand("export", "Write the dataset as one JSON document");
  add_inventory(exp);
  add_records(exp, true);
  exp->add_option("--out", o.out, "Output file (default stdout)");
  exp->callback([&] { run = cmd_export; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run(o);
  } catch (const StatsError &e) {
    std::cerr << "semrel: " << e.what() << "\n";
    return e.kind() == StatsErrorKind::kUnknownScope ? kUsage : kViolations;
  } catch (const std::exception &e) {
    std::cerr << "semrel: " << e.what() << "\n";
    return kViolations;
  }
}
