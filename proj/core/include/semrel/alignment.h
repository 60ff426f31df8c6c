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

#ifndef SEMREL_ALIGNMENT_H_
#define SEMREL_ALIGNMENT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "semrel/error.h"
#include "semrel/inventory.h"

namespace semrel {

enum class Pos { kNoun, kVerb, kAdjective, kAdverb };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view s);

// One lexical sense mapped to an ontology class. Multiword lemmas keep
// their internal spaces ("line of credit").
struct SenseEntry {
  std::string lemma;
  Pos pos = Pos::kNoun;
  std::string sense_id;
  std::string dolce_class;
  std::string gloss;

  friend bool operator==(const SenseEntry &, const SenseEntry &) = default;
};

struct SenseClass {
  std::string sense_id;
  std::string class_id;

  friend bool operator==(const SenseClass &, const SenseClass &) = default;
};

enum class AlignmentErrorKind { kParse, kUnknownClass, kDuplicateKey };
using AlignmentError = KindedError<AlignmentErrorKind>;

// Lemma/sense to class table. Entries are kept sorted by (lemma, pos,
// sense id in natural order).
class AlignmentTable {
 public:
  AlignmentTable() = default;
  AlignmentTable(std::string source_label, std::vector<SenseEntry> entries);

  const std::string &source_label() const { return source_label_; }
  const std::vector<SenseEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // Senses for (lemma, pos) in sense order. Adjectives and adverbs absent
  // from the table get a single ("default", "quality") entry; unknown
  // nouns and verbs yield an empty list.
  std::vector<SenseClass> classes_for(std::string_view lemma, Pos pos) const;

  friend bool operator==(const AlignmentTable &, const AlignmentTable &) = default;

 private:
  std::string source_label_;
  std::vector<SenseEntry> entries_;
};

inline constexpr std::string_view kQualityClass = "quality";
inline constexpr std::string_view kDefaultSense = "default";

// Text format:
//
//   source = <label>
//   [entries]
//   <lemma> | <pos> | <sense> | <class-id> | <gloss>
//
// Throws AlignmentError on malformed lines, duplicate (lemma, pos, sense)
// keys, or classes the inventory does not declare.
AlignmentTable load_alignment(std::string_view text, const Inventory &inv);
AlignmentTable load_alignment_file(const std::string &path, const Inventory &inv);
std::string format_alignment(const AlignmentTable &table);

}  // namespace semrel

#endif  // SEMREL_ALIGNMENT_H_
