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

#include "semrel/alignment.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "text_util.h"

namespace semrel {

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kVerb: return "verb";
    case Pos::kAdjective: return "adjective";
    case Pos::kAdverb: return "adverb";
  }
  return "noun";
}

std::optional<Pos> parse_pos(std::string_view s) {
  if (s == "noun") return Pos::kNoun;
  if (s == "verb") return Pos::kVerb;
  if (s == "adjective") return Pos::kAdjective;
  if (s == "adverb") return Pos::kAdverb;
  return std::nullopt;
}

namespace {

bool entry_less(const SenseEntry &a, const SenseEntry &b) {
  if (a.lemma != b.lemma) return a.lemma < b.lemma;
  if (a.pos != b.pos) return a.pos < b.pos;
  return text::natural_less(a.sense_id, b.sense_id);
}

[[noreturn]] void fail(AlignmentErrorKind kind, int line, const std::string &message) {
  throw AlignmentError(kind, "alignment line " + std::to_string(line) + ": " + message);
}

}  // namespace

AlignmentTable::AlignmentTable(std::string source_label, std::vector<SenseEntry> entries)
    : source_label_(std::move(source_label)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), entry_less);
}

std::vector<SenseClass> AlignmentTable::classes_for(std::string_view lemma, Pos pos) const {
  std::vector<SenseClass> out;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(lemma, pos),
                             [](const SenseEntry &e, const std::pair<std::string_view, Pos> &key) {
                               if (e.lemma != key.first) return e.lemma < key.first;
                               return e.pos < key.second;
                             });
  for (; it != entries_.end() && it->lemma == lemma && it->pos == pos; ++it) {
    out.push_back({it->sense_id, it->dolce_class});
  }
  if (out.empty() && (pos == Pos::kAdjective || pos == Pos::kAdverb)) {
    out.push_back({std::string(kDefaultSense), std::string(kQualityClass)});
  }
  return out;
}

AlignmentTable load_alignment(std::string_view text, const Inventory &inv) {
  std::string source;
  bool in_entries = false;
  std::vector<SenseEntry> entries;
  std::set<std::tuple<std::string, Pos, std::string>> keys;

  for (const text::Line &line : text::lines(text)) {
    if (text::is_blank_or_comment(line.text)) continue;
    std::string_view t = text::trim(line.text);
    if (t == "[entries]") {
      if (in_entries) fail(AlignmentErrorKind::kParse, line.number, "[entries] repeated");
      in_entries = true;
      continue;
    }
    if (!in_entries) {
      std::string_view key, value;
      if (!text::split_assignment(t, &key, &value) || key != "source") {
        fail(AlignmentErrorKind::kParse, line.number,
             "expected 'source = ...' or [entries]");
      }
      source = std::string(value);
      continue;
    }

    std::vector<std::string_view> fields = text::split(t, '|');
    if (fields.size() != 5) {
      fail(AlignmentErrorKind::kParse, line.number,
           "expected 5 '|'-separated fields, got " + std::to_string(fields.size()));
    }
    for (auto &f : fields) f = text::trim(f);
    SenseEntry e;
    e.lemma = std::string(fields[0]);
    if (e.lemma.empty() || e.lemma != text::to_lower(e.lemma)) {
      fail(AlignmentErrorKind::kParse, line.number, "lemma must be non-empty lowercase");
    }
    auto pos = parse_pos(fields[1]);
    if (!pos) {
      fail(AlignmentErrorKind::kParse, line.number,
           "unknown part of speech '" + std::string(fields[1]) + "'");
    }
    e.pos = *pos;
    e.sense_id = std::string(fields[2]);
    if (e.sense_id.empty()) fail(AlignmentErrorKind::kParse, line.number, "empty sense id");
    e.dolce_class = std::string(fields[3]);
    if (inv.find_class(e.dolce_class) == nullptr) {
      fail(AlignmentErrorKind::kUnknownClass, line.number,
           "class '" + e.dolce_class + "' is not in the inventory");
    }
    e.gloss = std::string(fields[4]);
    if (!keys.emplace(e.lemma, e.pos, e.sense_id).second) {
      fail(AlignmentErrorKind::kDuplicateKey, line.number,
           "duplicate entry " + e.lemma + "/" + std::string(to_string(e.pos)) + "/" +
               e.sense_id);
    }
    entries.push_back(std::move(e));
  }
  if (!in_entries) fail(AlignmentErrorKind::kParse, 1, "missing [entries] section");
  return AlignmentTable(std::move(source), std::move(entries));
}

AlignmentTable load_alignment_file(const std::string &path, const Inventory &inv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw AlignmentError(AlignmentErrorKind::kParse, "cannot open alignment file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_alignment(buffer.str(), inv);
}

std::string format_alignment(const AlignmentTable &table) {
  std::ostringstream out;
  out << "source = " << table.source_label() << "\n\n[entries]\n";
  for (const SenseEntry &e : table.entries()) {
    out << e.lemma << " | " << to_string(e.pos) << " | " << e.sense_id << " | "
        << e.dolce_class << " | " << e.gloss << "\n";
  }
  return out.str();
}

}  // namespace semrel
