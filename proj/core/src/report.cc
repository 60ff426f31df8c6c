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


#include "semrel/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "json_codec.h"

namespace semrel {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Column 0 is left-aligned, the rest right-aligned.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<size_t> width;
    for (const auto &row : rows_) {
      width.resize(std::max(width.size(), row.size()));
      for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream out;
    for (size_t r = 0; r < rows_.size(); ++r) {
      std::string line;
      for (size_t i = 0; i < rows_[r].size(); ++i) {
        const std::string &cell = rows_[r][i];
        std::string pad(width[i] - cell.size(), ' ');
        if (i > 0) line += "  ";
        line += i == 0 ? cell + pad : pad + cell;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
      if (r == 0) {
        size_t total = 0;
        for (size_t w : width) total += w;
        out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
      }
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

namespace json_codec {

Json to_json(const ClassificationSummary &s) {
  auto row = [](const SummaryRow &r, bool split) {
    Json j{{"count", r.count}, {"percent", r.percent}};
    if (split) {
      j["dolce"] = {{"count", r.dolce}, {"percent", r.dolce_percent}};
      j["custom"] = {{"count", r.custom}, {"percent", r.custom_percent}};
    }
    return j;
  };
  return Json{{"direct", row(s.direct, true)},
              {"composite", row(s.composite, true)},
              {"unclassified", row(s.unclassified, false)},
              {"total", s.total},
              {"pending", s.pending}};
}

Json to_json(const RelationFrequencyReport &r) {
  Json entries = Json::array();
  for (const FrequencyEntry &e : r.entries) {
    entries.push_back(
        Json{{"key", e.key}, {"members", e.members}, {"count", e.count}, {"share", e.share}});
  }
  return Json{{"scope", to_string(r.options.scope)},
              {"origin", to_string(r.options.origin)},
              {"folded", r.options.fold_inverses},
              {"scope_size", r.scope_size},
              {"dolce_links", r.dolce_links},
              {"custom_links", r.custom_links},
              {"entries", std::move(entries)}};
}

Json to_json(const ChainLengthStats &s) {
  return Json{{"composite_records", s.composite_records},
              {"total_links", s.total_links},
              {"average", s.average}};
}

Json to_json(const RelatednessByRelation &r) {
  auto block = [](const std::map<std::string, MeanScore> &m) {
    Json j = Json::object();
    for (const auto &[k, v] : m) j[k] = {{"mean", v.mean}, {"pairs", v.pairs}};
    return j;
  };
  return Json{{"by_relation", block(r.by_relation)}, {"by_category", block(r.by_category)}};
}

}  // namespace json_codec

std::string render_text(const ClassificationSummary &s) {
  Table t({"Relation type", "Count", "Percent", "DOLCE", "Custom"});
  auto split_row = [&](const char *name, const SummaryRow &r) {
    t.add({name, std::to_string(r.count), fixed2(r.percent), fixed2(r.dolce_percent),
           fixed2(r.custom_percent)});
  };
  split_row("Direct", s.direct);
  split_row("Composite", s.composite);
  t.add({"Unclassified", std::to_string(s.unclassified.count), fixed2(s.unclassified.percent), "-",
         "-"});
  double sum = s.total ? s.direct.percent + s.composite.percent + s.unclassified.percent : 0;
  t.add({"Total", std::to_string(s.total), fixed2(sum), "", ""});
  std::string out = t.str();
  out += "DOLCE/Custom split of composite rows counts the first link of each chain.\n";
  if (s.pending) out += "Pending (not yet classified): " + std::to_string(s.pending) + "\n";
  return out;
}

std::string render_text(const RelationFrequencyReport &r) {
  std::string out = "Scope: " + std::string(to_string(r.options.scope)) +
                    ", origin: " + std::string(to_string(r.options.origin)) +
                    (r.options.fold_inverses ? ", inverses folded" : "") + "\n";
  Table t({"Relation", "Count", "Share"});
  for (const FrequencyEntry &e : r.entries) {
    std::string name = e.members.size() > 1 ? e.members[0] + " / " + e.members[1] : e.key;
    t.add({name, std::to_string(e.count), fixed2(e.share)});
  }
  t.add({"Total", std::to_string(r.scope_size), r.scope_size ? "100.00" : "0.00"});
  out += t.str();
  out += "Links in scope by origin: DOLCE " + std::to_string(r.dolce_links) + ", custom " +
         std::to_string(r.custom_links) + "\n";
  return out;
}

std::string render_text(const ChainLengthStats &s) {
  Table t({"Composite records", "Links", "Average length"});
  t.add({std::to_string(s.composite_records), std::to_string(s.total_links), fixed2(s.average)});
  return t.str();
}

std::string render_text(const RelatednessByRelation &r, const Inventory *inv) {
  std::vector<std::pair<std::string, MeanScore>> rows(r.by_relation.begin(), r.by_relation.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto &a, const auto &b) { return a.second.mean > b.second.mean; });
  std::vector<std::string> header{"Relation", "Pairs", "Mean"};
  if (inv) header.insert(header.begin() + 1, "Origin");
  Table t(header);
  for (const auto &[id, m] : rows) {
    std::vector<std::string> row{id, std::to_string(m.pairs), fixed2(m.mean)};
    if (inv) {
      const RelationDef *def = inv->find_relation(id);
      row.insert(row.begin() + 1, def ? std::string(to_string(def->origin)) : "?");
    }
    t.add(std::move(row));
  }
  Table c({"Category", "Pairs", "Mean"});
  for (const char *k : {"direct", "composite", "unclassified"}) {
    auto it = r.by_category.find(k);
    if (it == r.by_category.end()) continue;
    c.add({k, std::to_string(it->second.pairs), fixed2(it->second.mean)});
  }
  return t.str() + "\n" + c.str();
}

std::string render_json(const ClassificationSummary &s) { return json_codec::to_json(s).dump(2); }
std::string render_json(const RelationFrequencyReport &r) { return json_codec::to_json(r).dump(2); }
std::string render_json(const ChainLengthStats &s) { return json_codec::to_json(s).dump(2); }
std::string render_json(const RelatednessByRelation &r) { return json_codec::to_json(r).dump(2); }

}  // namespace semrel
