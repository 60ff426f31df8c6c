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


#include "semrel/stats.h"

#include <algorithm>
#include <numeric>

namespace semrel {
namespace {

int64_t hundredths_half_up(uint64_t part, uint64_t whole) {
  if (whole == 0) return 0;
  // round(part * 10000 / whole) with exact integer arithmetic.
  unsigned __int128 num = static_cast<unsigned __int128>(part) * 20000 + whole;
  return static_cast<int64_t>(num / (2 * static_cast<unsigned __int128>(whole)));
}

const DirectAssignment *as_direct(const AnnotationRecord &r) {
  return r.assignment ? std::get_if<DirectAssignment>(&*r.assignment) : nullptr;
}

const CompositeAssignment *as_composite(const AnnotationRecord &r) {
  return r.assignment ? std::get_if<CompositeAssignment>(&*r.assignment) : nullptr;
}

const RelationLink &first_link(const AnnotationRecord &r) {
  const CompositeAssignment *c = as_composite(r);
  if (c->chain.empty()) {
    throw StatsError(StatsErrorKind::kEmptyChain, "composite record '" + r.id + "' has no links");
  }
  return c->chain.front();
}

Origin origin_of(const Inventory &inv, const std::string &relation) {
  const RelationDef *def = inv.find_relation(relation);
  if (def == nullptr) {
    throw StatsError(StatsErrorKind::kUnknownRelation,
                     "relation '" + relation + "' is not in inventory " + inv.version());
  }
  return def->origin;
}

void fill_split(SummaryRow *row) {
  const uint64_t parts[] = {row->dolce, row->custom};
  std::vector<double> pct = partition_percentages(parts);
  row->dolce_percent = pct[0];
  row->custom_percent = pct[1];
}

}  // namespace

double percent_half_up(uint64_t part, uint64_t whole) {
  return static_cast<double>(hundredths_half_up(part, whole)) / 100.0;
}

std::vector<double> partition_percentages(std::span<const uint64_t> counts) {
  std::vector<double> out(counts.size(), 0.0);
  uint64_t total = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
  if (total == 0) return out;
  struct Slot {
    size_t index;
    int64_t floor;
    unsigned __int128 remainder;
  };
  std::vector<Slot> slots;
  int64_t assigned = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    unsigned __int128 scaled = static_cast<unsigned __int128>(counts[i]) * 10000;
    Slot s{i, static_cast<int64_t>(scaled / total), scaled % total};
    assigned += s.floor;
    slots.push_back(s);
  }
  std::vector<Slot> order = slots;
  std::stable_sort(order.begin(), order.end(), [&](const Slot &a, const Slot &b) {
    if (a.remainder != b.remainder) return a.remainder > b.remainder;
    return counts[a.index] > counts[b.index];
  });
  for (int64_t k = 0; k < 10000 - assigned; ++k) ++slots[order[k].index].floor;
  for (const Slot &s : slots) out[s.index] = static_cast<double>(s.floor) / 100.0;
  return out;
}

ClassificationSummary summarize(std::span<const AnnotationRecord> records, const Inventory &inv) {
  ClassificationSummary s;
  for (const AnnotationRecord &r : records) {
    switch (classify_status(r)) {
      case Status::kPending:
        ++s.pending;
        break;
      case Status::kUnclassified:
        ++s.unclassified.count;
        break;
      case Status::kDirect: {
        ++s.direct.count;
        Origin o = origin_of(inv, as_direct(r)->link.relation);
        ++(o == Origin::kDolce ? s.direct.dolce : s.direct.custom);
        break;
      }
      case Status::kComposite: {
        ++s.composite.count;
        Origin o = origin_of(inv, first_link(r).relation);
        ++(o == Origin::kDolce ? s.composite.dolce : s.composite.custom);
        break;
      }
    }
  }
  s.total = s.direct.count + s.composite.count + s.unclassified.count;
  const uint64_t rows[] = {s.direct.count, s.composite.count, s.unclassified.count};
  std::vector<double> pct = partition_percentages(rows);
  s.direct.percent = pct[0];
  s.composite.percent = pct[1];
  s.unclassified.percent = pct[2];
  fill_split(&s.direct);
  fill_split(&s.composite);
  return s;
}

std::string_view to_string(FrequencyScope scope) {
  switch (scope) {
    case FrequencyScope::kDirect: return "direct";
    case FrequencyScope::kCompositeFirstLink: return "composite-first-pair";
    case FrequencyScope::kCompositeAllLinks: return "composite-all-links";
  }
  return "?";
}

std::string_view to_string(OriginFilter filter) {
  switch (filter) {
    case OriginFilter::kAll: return "all";
    case OriginFilter::kDolce: return "dolce";
    case OriginFilter::kCustom: return "custom";
  }
  return "?";
}

FrequencyScope parse_frequency_scope(std::string_view s) {
  for (auto scope : {FrequencyScope::kDirect, FrequencyScope::kCompositeFirstLink,
                     FrequencyScope::kCompositeAllLinks}) {
    if (to_string(scope) == s) return scope;
  }
  throw StatsError(StatsErrorKind::kUnknownScope,
                   "unknown frequency scope '" + std::string(s) +
                       "' (expected direct, composite-first-pair or composite-all-links)");
}

OriginFilter parse_origin_filter(std::string_view s) {
  for (auto f : {OriginFilter::kAll, OriginFilter::kDolce, OriginFilter::kCustom}) {
    if (to_string(f) == s) return f;
  }
  throw StatsError(StatsErrorKind::kUnknownScope,
                   "unknown origin filter '" + std::string(s) + "' (expected all, dolce or custom)");
}

uint64_t RelationFrequencyReport::count_of(std::string_view key) const {
  for (const FrequencyEntry &e : entries) {
    if (e.key == key) return e.count;
  }
  return 0;
}

uint64_t RelationFrequencyReport::family_count(std::span<const std::string> keys) const {
  uint64_t n = 0;
  for (const std::string &k : keys) n += count_of(k);
  return n;
}

double RelationFrequencyReport::family_share(std::span<const std::string> keys) const {
  return percent_half_up(family_count(keys), scope_size);
}

RelationFrequencyReport relation_frequencies(std::span<const AnnotationRecord> records,
                                             const Inventory &inv,
                                             const FrequencyOptions &options) {
  RelationFrequencyReport report;
  report.options = options;
  std::map<std::string, FrequencyEntry> by_key;

  auto count = [&](const std::string &relation) {
    Origin o = origin_of(inv, relation);
    ++(o == Origin::kDolce ? report.dolce_links : report.custom_links);
    if (options.origin == OriginFilter::kDolce && o != Origin::kDolce) return;
    if (options.origin == OriginFilter::kCustom && o != Origin::kCustom) return;
    std::string key = relation;
    std::vector<std::string> members{relation};
    if (options.fold_inverses) {
      if (auto inv_id = inv.inverse_of(relation); inv_id && *inv_id != relation) {
        members = {std::min(relation, *inv_id), std::max(relation, *inv_id)};
        key = members.front();
      }
    }
    FrequencyEntry &e = by_key[key];
    e.key = key;
    e.members = members;
    ++e.count;
    ++report.scope_size;
  };

  for (const AnnotationRecord &r : records) {
    switch (options.scope) {
      case FrequencyScope::kDirect:
        if (classify_status(r) == Status::kDirect) count(as_direct(r)->link.relation);
        break;
      case FrequencyScope::kCompositeFirstLink:
        if (classify_status(r) == Status::kComposite) {
          count(first_link(r).relation);
        }
        break;
      case FrequencyScope::kCompositeAllLinks:
        if (classify_status(r) == Status::kComposite) {
          for (const RelationLink &l : as_composite(r)->chain) count(l.relation);
        }
        break;
    }
  }

  for (auto &[key, e] : by_key) {
    e.share = percent_half_up(e.count, report.scope_size);
    report.entries.push_back(std::move(e));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const FrequencyEntry &a, const FrequencyEntry &b) {
              if (a.count != b.count) return a.count > b.count;
              return a.key < b.key;
            });
  return report;
}

ChainLengthStats chain_length_stats(std::span<const AnnotationRecord> records) {
  ChainLengthStats st;
  for (const AnnotationRecord &r : records) {
    if (classify_status(r) != Status::kComposite) continue;
    ++st.composite_records;
    st.total_links += as_composite(r)->chain.size();
  }
  if (st.composite_records == 0) {
    throw StatsError(StatsErrorKind::kNoCompositeRecords,
                     "average chain length is undefined without composite records");
  }
  st.average = static_cast<double>(hundredths_half_up(st.total_links, st.composite_records * 100)) /
               100.0;
  return st;
}

double avg_chain_length(std::span<const AnnotationRecord> records) {
  return chain_length_stats(records).average;
}

RelatednessByRelation relatedness_report(std::span<const AnnotationRecord> records) {
  struct Acc {
    double sum = 0;
    uint64_t n = 0;
  };
  std::map<std::string, Acc> relations;
  std::map<std::string, Acc> categories;
  for (const AnnotationRecord &r : records) {
    std::optional<double> mean = r.mean_relatedness();
    if (!mean) continue;
    Status status = classify_status(r);
    if (status == Status::kPending) continue;
    Acc &c = categories[std::string(to_string(status))];
    c.sum += *mean;
    ++c.n;
    if (status == Status::kDirect) {
      Acc &a = relations[as_direct(r)->link.relation];
      a.sum += *mean;
      ++a.n;
    }
  }
  RelatednessByRelation out;
  for (const auto &[k, a] : relations) out.by_relation[k] = {a.sum / a.n, a.n};
  for (const auto &[k, a] : categories) out.by_category[k] = {a.sum / a.n, a.n};
  return out;
}

}  // namespace semrel
