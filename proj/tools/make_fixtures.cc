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


// Writes the classification fixture: 300 annotated pairs with fixed
// category, origin and chain-length totals and authored relatedness scores.
// Every record is validated against the inventory before anything is
// written. Output is byte-stable.
//
//   semrel_make_fixtures <inventory> <out.jsonl>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "semrel/annotation.h"
#include "semrel/inventory.h"
#include "semrel/record_codec.h"
#include "semrel/rng.h"
#include "semrel/stats.h"

using namespace semrel;

namespace {

const std::map<std::string, std::vector<std::string>> kLexicon = {
    {"action", {"payment", "financing", "lending", "repayment", "borrowing", "transfer",
                "purchase", "investment", "audit", "approval", "withdrawal", "settlement"}},
    {"process", {"inflation", "depreciation", "accrual", "growth", "amortisation"}},
    {"event", {"default", "bankruptcy", "merger", "crisis"}},
    {"physical-object", {"vault", "terminal", "building", "safe"}},
    {"information-object", {"report", "contract", "statement", "ledger", "invoice", "record"}},
    {"description", {"type", "regulation", "policy", "rule", "standard"}},
    {"legal-possession-entity", {"money", "loan", "asset", "deposit", "share", "bond",
                                 "mortgage", "collateral", "credit", "interest", "debt",
                                 "dividend"}},
    {"social-role", {"bank", "lender", "borrower", "creditor", "debtor", "investor",
                     "shareholder", "auditor", "guarantor"}},
    {"socially-constructed-person", {"company", "corporation", "firm", "government",
                                     "institution"}},
    {"quality", {"quick", "solvent", "eligible", "liquid", "risky", "creditworthiness",
                 "volatile", "stable", "profitable"}},
    {"time-interval", {"month", "year", "quarter", "maturity", "term"}},
    {"space-region", {"region", "market-area", "jurisdiction"}},
    {"situation", {"insolvency", "arrears", "recession", "liquidity-shortage"}},
};

struct DirectPlan {
  std::string relation;
  int count;
  std::string source_class;
  std::string target_class;
};

// Direct records per relation, with the classes the pairs are drawn from.
const std::vector<DirectPlan> kDirect = {
    {"patient", 12, "action", "legal-possession-entity"},
    {"patient-of", 6, "legal-possession-entity", "action"},
    {"target", 9, "action", "social-role"},
    {"target-of", 5, "social-role", "action"},
    {"component-of", 2, "information-object", "information-object"},
    {"descriptive-place-of", 1, "description", "legal-possession-entity"},
    {"product", 2, "action", "information-object"},
    {"use-of", 2, "action", "physical-object"},
    {"part-of", 2, "information-object", "information-object"},
    {"unit-of", 2, "legal-possession-entity", "legal-possession-entity"},
    {"happens-at", 3, "action", "time-interval"},
    {"involves", 1, "situation", "social-role"},
    {"result", 1, "process", "legal-possession-entity"},
    {"performs", 8, "social-role", "action"},
    {"performed-by", 3, "action", "social-role"},
    {"references", 5, "information-object", "legal-possession-entity"},
    {"instrument", 3, "action", "information-object"},
    {"resource", 2, "action", "legal-possession-entity"},
    {"generic-location", 2, "physical-object", "space-region"},
    {"theme", 2, "action", "information-object"},
    {"co-participates-with", 2, "social-role", "social-role"},
    {"precedes", 2, "action", "action"},
    {"qualifier", 30, "quality", "legal-possession-entity"},
    {"indirect-target", 20, "action", "socially-constructed-person"},
    {"ownership", 17, "social-role", "legal-possession-entity"},
    {"specialisation", 2, "legal-possession-entity", "legal-possession-entity"},
    {"source", 3, "legal-possession-entity", "social-role"},
    {"common-ownership", 4, "social-role", "social-role"},
    {"condition", 4, "quality", "quality"},
    {"co-occurring-qualifier", 3, "quality", "quality"},
    {"coreference", 3, "social-role", "socially-constructed-person"},
    {"correlated-variation", 4, "quality", "quality"},
    {"destination", 3, "legal-possession-entity", "social-role"},
    {"indirect-ownership", 4, "socially-constructed-person", "legal-possession-entity"},
    {"indirect-qualifier", 4, "quality", "social-role"},
    {"indirect-reference", 4, "information-object", "social-role"},
    {"indirect-result", 4, "process", "situation"},
    {"instantiation", 4, "legal-possession-entity", "description"},
    {"membership", 4, "social-role", "socially-constructed-person"},
    {"opposition", 3, "quality", "quality"},
    {"represented-in", 4, "legal-possession-entity", "information-object"},
    {"sibling-concept", 4, "legal-possession-entity", "legal-possession-entity"},
    {"theme-component", 3, "information-object", "legal-possession-entity"},
    {"used-for", 4, "legal-possession-entity", "action"},
    {"value-component", 3, "legal-possession-entity", "quality"},
    {"affects", 3, "process", "legal-possession-entity"},
};

// Extra edges available to chains only.
const std::vector<std::tuple<std::string, std::string, std::string>> kChainOnlyEdges = {
    {"prescribes", "description", "action"},
    {"performs", "socially-constructed-person", "action"},
    {"patient", "action", "physical-object"},
    {"precedes", "event", "action"},
    {"temporally-includes", "process", "action"},
    {"participant", "event", "socially-constructed-person"},
    {"result", "event", "situation"},
    {"involves", "situation", "socially-constructed-person"},
    {"references", "information-object", "time-interval"},
    {"generic-location", "socially-constructed-person", "space-region"},
    {"affects", "event", "legal-possession-entity"},
    {"qualifier", "quality", "action"},
    {"condition", "situation", "event"},
    {"indirect-qualifier", "quality", "socially-constructed-person"},
    {"sibling-concept", "description", "description"},
    {"affects", "situation", "process"},
};

// Per-record annotator score pairs for the relations whose group means are
// pinned; the others cycle through kOtherDirect.
const std::map<std::string, std::vector<std::pair<double, double>>> kPinnedScores = {
    {"specialisation", {{9, 10}, {10, 9}}},
    {"component-of", {{9, 9}, {8, 10}}},
    {"descriptive-place-of", {{9, 9}}},
    {"product", {{9, 9}, {10, 8}}},
    {"use-of", {{8, 9}, {9, 8}}},
    {"part-of", {{8, 8}, {8, 9}}},
    {"unit-of", {{8, 9}, {8, 8}}},
    {"happens-at", {{3, 3}, {2, 4}, {4, 2}}},
    {"involves", {{3, 4}}},
    {"result", {{4, 3}}},
    {"source", {{3, 4}, {4, 3}, {4, 4}}},
};

const std::vector<std::pair<double, double>> kOtherDirect = {{7, 8}, {6, 8}, {8, 8}, {7, 7}};
const std::vector<std::pair<double, double>> kComposite = {{3, 4}, {4, 4}, {2, 4}, {3, 3}};
const std::vector<std::pair<double, double>> kUnclassified = {{2, 3}, {3, 3}, {1, 3}};

const std::vector<std::string> kChainClasses = {
    "action", "legal-possession-entity", "social-role", "information-object", "process",
    "socially-constructed-person", "quality", "time-interval", "description", "situation",
    "physical-object", "event", "space-region"};

class Generator {
 public:
  explicit Generator(const Inventory &inv) : inv_(inv) {
    auto add = [&](const std::string &rel, const std::string &src, const std::string &tgt) {
      if (!inv.admits(inv.get_relation(rel), Direction::kForward, src, tgt)) {
        throw Error(rel + " does not admit (" + src + ", " + tgt + ")");
      }
      edges_.push_back({rel, inv.get_relation(rel).origin, src, tgt});
    };
    for (const DirectPlan &p : kDirect) add(p.relation, p.source_class, p.target_class);
    for (const auto &[rel, src, tgt] : kChainOnlyEdges) add(rel, src, tgt);
  }

  std::string term(const std::string &cls, const std::set<std::string> &avoid) {
    const auto &words = kLexicon.at(cls);
    size_t &next = cursor_[cls];
    for (size_t i = 0; i < words.size(); ++i) {
      const std::string &w = words[next++ % words.size()];
      if (!avoid.count(w)) return w;
    }
    throw Error("lexicon for " + cls + " is exhausted");
  }

  ConceptMention mention(const std::string &term, const std::string &cls,
                         const std::string &sentence) {
    ConceptMention m;
    m.term = term;
    m.sentence = sentence;
    m.assigned_class = cls;
    return m;
  }

  std::string new_sentence() { return "fixture:" + std::to_string(sentence_++); }

  AnnotationRecord direct(const DirectPlan &plan) {
    AnnotationRecord r;
    r.sentence = new_sentence();
    std::string a = term(plan.source_class, {});
    std::string b = term(plan.target_class, {a});
    r.first = mention(a, plan.source_class, r.sentence);
    r.second = mention(b, plan.target_class, r.sentence);
    DirectAssignment d;
    d.link = {r.first, plan.relation, Direction::kForward, r.second};
    r.assignment = d;
    return r;
  }

  // Chain whose link origins follow `origins`: a backtracking walk over the
  // plausible (relation, source class, target class) edges, with rotating
  // start points so consecutive chains differ.
  AnnotationRecord composite(const std::vector<Origin> &origins) {
    std::vector<const Edge *> path;
    bool found = false;
    for (size_t i = 0; i < kChainClasses.size() && !found; ++i) {
      found = walk(kChainClasses[start_++ % kChainClasses.size()], origins, &path);
    }
    if (!found) throw Error("no chain of the requested shape exists");
    edge_cursor_ += 7;

    AnnotationRecord r;
    r.sentence = new_sentence();
    std::set<std::string> used;
    std::string t = term(path.front()->source_class, used);
    used.insert(t);
    ConceptMention current = mention(t, path.front()->source_class, r.sentence);
    CompositeAssignment c;
    for (const Edge *e : path) {
      std::string next_term = term(e->target_class, used);
      used.insert(next_term);
      ConceptMention next = mention(next_term, e->target_class, r.sentence);
      c.chain.push_back({current, e->relation, Direction::kForward, next});
      current = next;
    }
    r.first = c.chain.front().source;
    r.second = c.chain.back().target;
    r.assignment = c;
    return r;
  }

  // type -references-> financing -used-for(inverse)-> payments -happens-at-> month
  AnnotationRecord worked_example() {
    AnnotationRecord r;
    r.sentence = new_sentence();
    ConceptMention type = mention("type", "description", r.sentence);
    ConceptMention financing = mention("financing", "action", r.sentence);
    ConceptMention payments = mention("payments", "action", r.sentence);
    ConceptMention month = mention("month", "time-interval", r.sentence);
    CompositeAssignment c;
    c.chain = {{type, "references", Direction::kForward, financing},
               {financing, "used-for", Direction::kInverse, payments},
               {payments, "happens-at", Direction::kForward, month}};
    r.first = type;
    r.second = month;
    r.assignment = c;
    return r;
  }

  AnnotationRecord unclassified(UnclassifiedReason reason) {
    AnnotationRecord r;
    r.sentence = new_sentence();
    const std::string &ca = kChainClasses[start_++ % kChainClasses.size()];
    const std::string &cb = kChainClasses[start_++ % kChainClasses.size()];
    std::string a = term(ca, {});
    std::string b = term(cb, {a});
    r.first = mention(a, ca, r.sentence);
    r.second = mention(b, cb, r.sentence);
    r.assignment = UnclassifiedAssignment{reason};
    return r;
  }

 private:
  struct Edge {
    std::string relation;
    Origin origin;
    std::string source_class;
    std::string target_class;
  };

  bool walk(const std::string &cls, const std::vector<Origin> &origins,
            std::vector<const Edge *> *path) {
    if (path->size() == origins.size()) return true;
    Origin want = origins[path->size()];
    for (size_t i = 0; i < edges_.size(); ++i) {
      const Edge &e = edges_[(edge_cursor_ + i * 5) % edges_.size()];
      if (e.origin != want || e.source_class != cls) continue;
      path->push_back(&e);
      if (walk(e.target_class, origins, path)) return true;
      path->pop_back();
    }
    return false;
  }

  const Inventory &inv_;
  std::vector<Edge> edges_;
  size_t edge_cursor_ = 0;
  std::map<std::string, size_t> cursor_;
  size_t start_ = 0;
  int sentence_ = 0;
};

void score(AnnotationRecord *r, std::pair<double, double> s) {
  r->relatedness["annotator-a"] = s.first;
  r->relatedness["annotator-b"] = s.second;
}

// Origin sequences for the 74 chains: 30 of length 2, 39 of length 3 and 5
// of length 4; first links 36 DOLCE / 38 custom; all links 111 / 86. The
// worked example (DOLCE, custom, DOLCE) is the first length-3 chain.
std::vector<std::vector<Origin>> chain_plans() {
  std::vector<size_t> lengths;
  lengths.insert(lengths.end(), 30, 2);
  lengths.insert(lengths.end(), 39, 3);
  lengths.insert(lengths.end(), 5, 4);
  std::vector<std::vector<Origin>> plans;
  // 48 of the 123 later links are custom, spread evenly.
  const size_t later_total = 123;
  const size_t later_custom = 48;
  size_t slot = 0;
  for (size_t i = 0; i < lengths.size(); ++i) {
    std::vector<Origin> p;
    p.push_back(i % 2 == 0 && i < 72 ? Origin::kDolce : Origin::kCustom);
    for (size_t k = 1; k < lengths[i]; ++k, ++slot) {
      bool custom = (slot + 1) * later_custom / later_total > slot * later_custom / later_total;
      p.push_back(custom ? Origin::kCustom : Origin::kDolce);
    }
    plans.push_back(p);
  }
  return plans;
}

}  // namespace

int main(int argc, char **argv) {
  if (argc != 3) {
    std::cerr << "usage: semrel_make_fixtures <inventory> <out.jsonl>\n";
    return 2;
  }
  try {
    Inventory inv = load_inventory_file(argv[1]);
    Generator gen(inv);
    std::vector<AnnotationRecord> records;

    std::map<std::string, size_t> seen;
    size_t other = 0;
    for (const DirectPlan &plan : kDirect) {
      for (int i = 0; i < plan.count; ++i) {
        AnnotationRecord r = gen.direct(plan);
        auto pinned = kPinnedScores.find(plan.relation);
        score(&r, pinned != kPinnedScores.end() ? pinned->second.at(seen[plan.relation]++)
                                                : kOtherDirect[other++ % kOtherDirect.size()]);
        records.push_back(std::move(r));
      }
    }

    auto plans = chain_plans();
    bool example_placed = false;
    for (size_t i = 0; i < plans.size(); ++i) {
      const auto &p = plans[i];
      AnnotationRecord r;
      if (!example_placed && p == std::vector<Origin>{Origin::kDolce, Origin::kCustom,
                                                      Origin::kDolce}) {
        r = gen.worked_example();
        example_placed = true;
      } else {
        r = gen.composite(p);
      }
      score(&r, kComposite[i % kComposite.size()]);
      records.push_back(std::move(r));
    }
    if (!example_placed) throw Error("no chain plan matches the worked example");

    const std::pair<UnclassifiedReason, int> reasons[] = {
        {UnclassifiedReason::kTooDistant, 3},
        {UnclassifiedReason::kDifferentClauses, 4},
        {UnclassifiedReason::kNoRelationFound, 1}};
    size_t u = 0;
    for (const auto &[reason, n] : reasons) {
      for (int i = 0; i < n; ++i) {
        AnnotationRecord r = gen.unclassified(reason);
        score(&r, kUnclassified[u++ % kUnclassified.size()]);
        records.push_back(std::move(r));
      }
    }

    // Interleave the categories so the log does not read in plan order.
    SplitMix64 rng(20260101);
    for (size_t i = records.size(); i > 1; --i) {
      std::swap(records[i - 1], records[rng.uniform(i)]);
    }
    for (size_t i = 0; i < records.size(); ++i) {
      char id[24];
      std::snprintf(id, sizeof id, "r%06zu", i + 1);
      records[i].id = id;
      records[i].version = 1;
      records[i].created_at = records[i].updated_at = "2026-01-01T00:00:00Z";
      records[i].review_status = ReviewStatus::kReviewed;
    }

    size_t bad = 0;
    for (const AnnotationRecord &r : records) {
      for (const AnnotationViolation &v : validate_record(r, inv)) {
        std::cerr << r.id << ": " << to_string(v.kind) << ": " << v.message << "\n";
        ++bad;
      }
    }
    if (bad) return 1;

    ClassificationSummary s = summarize(records, inv);
    ChainLengthStats chains = chain_length_stats(records);
    RelationFrequencyReport links =
        relation_frequencies(records, inv, {FrequencyScope::kCompositeAllLinks});
    if (s.direct.count != 218 || s.direct.dolce != 77 || s.composite.count != 74 ||
        s.composite.dolce != 36 || s.unclassified.count != 8 || chains.total_links != 197 ||
        links.dolce_links != 111 || links.custom_links != 86) {
      std::cerr << "fixture totals are off: direct " << s.direct.count << "/" << s.direct.dolce
                << ", composite " << s.composite.count << "/" << s.composite.dolce
                << ", unclassified " << s.unclassified.count << ", links "
                << chains.total_links << " (" << links.dolce_links << "/" << links.custom_links
                << ")\n";
      return 1;
    }

    std::ofstream out(argv[2], std::ios::binary | std::ios::trunc);
    for (const AnnotationRecord &r : records) out << record_to_json(r) << "\n";
    if (!out) throw Error(std::string("cannot write ") + argv[2]);
    std::cout << "wrote " << records.size() << " records to " << argv[2] << "\n";
    return 0;
  } catch (const std::exception &e) {
    std::cerr << "semrel_make_fixtures: " << e.what() << "\n";
    return 1;
  }
}
