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


#ifndef SEMREL_STATS_H_
#define SEMREL_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semrel/annotation.h"
#include "semrel/error.h"
#include "semrel/inventory.h"

namespace semrel {

enum class StatsErrorKind {
  kUnknownScope,
  kNoCompositeRecords,
  kUnknownRelation,
  kEmptyChain,
};

class StatsError : public KindedError<StatsErrorKind> {
 public:
  using KindedError::KindedError;
};

// part / whole as a percentage rounded half-up to 2 decimals; 0 when whole
// is 0.
double percent_half_up(uint64_t part, uint64_t whole);

// Percentages for a partition, in hundredths, that sum to exactly 100.00
// (largest remainder; ties go to the larger count, then the earlier slot).
// All zeros for an empty partition.
std::vector<double> partition_percentages(std::span<const uint64_t> counts);

struct SummaryRow {
  uint64_t count = 0;
  double percent = 0;
  // Direct and composite rows only. Composite rows count the first link.
  uint64_t dolce = 0;
  uint64_t custom = 0;
  double dolce_percent = 0;
  double custom_percent = 0;
};

struct ClassificationSummary {
  SummaryRow direct;
  SummaryRow composite;
  SummaryRow unclassified;
  // Classified records only; pending records are counted separately.
  uint64_t total = 0;
  uint64_t pending = 0;
};

// Throws StatsError(kUnknownRelation) if a counted link names a relation
// the inventory does not define, kEmptyChain for a composite record with no
// links.
ClassificationSummary summarize(std::span<const AnnotationRecord> records, const Inventory &inv);

enum class FrequencyScope { kDirect, kCompositeFirstLink, kCompositeAllLinks };
enum class OriginFilter { kAll, kDolce, kCustom };

std::string_view to_string(FrequencyScope scope);
std::string_view to_string(OriginFilter filter);
// Throw StatsError(kUnknownScope) on an unrecognised name.
FrequencyScope parse_frequency_scope(std::string_view s);
OriginFilter parse_origin_filter(std::string_view s);

struct FrequencyOptions {
  FrequencyScope scope = FrequencyScope::kDirect;
  OriginFilter origin = OriginFilter::kAll;
  // Merge each relation with its inverse; the family is keyed by the
  // lexicographically smaller id.
  bool fold_inverses = false;
};

struct FrequencyEntry {
  std::string key;
  std::vector<std::string> members;
  uint64_t count = 0;
  double share = 0;
};

struct RelationFrequencyReport {
  FrequencyOptions options;
  // Links in scope after the origin filter.
  uint64_t scope_size = 0;
  // Links in scope by origin, before the filter.
  uint64_t dolce_links = 0;
  uint64_t custom_links = 0;
  // Count descending, then key.
  std::vector<FrequencyEntry> entries;

  uint64_t count_of(std::string_view key) const;
  // Combined share of the given entry keys, half-up to 2 decimals.
  double family_share(std::span<const std::string> keys) const;
  uint64_t family_count(std::span<const std::string> keys) const;
};

// Links are counted under their recorded relation id, whatever their
// direction.
RelationFrequencyReport relation_frequencies(std::span<const AnnotationRecord> records,
                                             const Inventory &inv,
                                             const FrequencyOptions &options);

struct ChainLengthStats {
  uint64_t composite_records = 0;
  uint64_t total_links = 0;
  double average = 0;
};

// Throws StatsError(kNoCompositeRecords) when there is nothing to average.
ChainLengthStats chain_length_stats(std::span<const AnnotationRecord> records);
double avg_chain_length(std::span<const AnnotationRecord> records);

struct MeanScore {
  double mean = 0;
  uint64_t pairs = 0;
};

struct RelatednessByRelation {
  // Direct records only, keyed by relation id.
  std::map<std::string, MeanScore> by_relation;
  // "direct", "composite", "unclassified".
  std::map<std::string, MeanScore> by_category;
};

// Records without any score are skipped. Means are unrounded.
RelatednessByRelation relatedness_report(std::span<const AnnotationRecord> records);

}  // namespace semrel

#endif  // SEMREL_STATS_H_
