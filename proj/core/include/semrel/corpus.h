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

#ifndef SEMREL_CORPUS_H_
#define SEMREL_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semrel/error.h"

namespace semrel {

enum class SourceKind { kGlossary, kArticle };

std::string_view to_string(SourceKind kind);

struct Token {
  std::string surface;
  // Byte offsets into the owning Sentence::text, [start, end).
  size_t start = 0;
  size_t end = 0;
};

struct Sentence {
  std::string id;
  std::string source;
  // Byte offset of `text` inside the ingested document.
  size_t offset = 0;
  std::string text;
  std::vector<Token> tokens;
};

struct DocumentSource {
  std::string id;
  SourceKind kind = SourceKind::kArticle;
  std::string name;
  size_t token_count = 0;
};

struct IngestedDocument {
  DocumentSource source;
  std::string text;
  std::vector<Sentence> sentences;
};

enum class CorpusErrorKind {
  kEmptyDocument,
  kNoEntries,
  kInsufficientEligible,
  kDuplicateSource,
  kIo,
};
using CorpusError = KindedError<CorpusErrorKind>;

struct SplitterOptions {
  // Lowercased tokens including the trailing period, e.g. "mr.".
  std::set<std::string> abbreviations = default_abbreviations();

  static std::set<std::string> default_abbreviations();
};

// Word tokens of `text`. Punctuation separates tokens and is not emitted;
// '-' and '\'' join letters/digits on both sides, '.' and ',' join digits.
std::vector<Token> tokenize(std::string_view text);

// Sentence boundaries: blank lines, and [.!?] (plus closing quotes or
// brackets) followed by whitespace and an uppercase letter, unless the word
// ending in '.' is a listed abbreviation.
std::vector<Sentence> split_sentences(std::string_view text, std::string_view source_id,
                                      const SplitterOptions &options);

// Throws CorpusError(kEmptyDocument) if `raw` has no non-blank content.
// The source id is `name`.
IngestedDocument ingest(std::string_view raw, SourceKind kind, std::string name,
                        const SplitterOptions &options = {});

// Lowercase, trim, and strip surrounding punctuation. No stemming.
std::string normalize_term(std::string_view s);

struct HeadwordRule {
  // The headword is the text of an entry's first line before the first of
  // these characters. Entries are blank-line separated blocks.
  std::string delimiters = ":\t";
};

class GlossaryIndex {
 public:
  GlossaryIndex() = default;
  explicit GlossaryIndex(std::set<std::string> headwords)
      : headwords_(std::move(headwords)) {}

  bool contains(std::string_view normalized) const {
    return headwords_.count(std::string(normalized)) > 0;
  }
  size_t size() const { return headwords_.size(); }
  const std::set<std::string> &headwords() const { return headwords_; }

 private:
  std::set<std::string> headwords_;
};

std::vector<std::string> extract_headwords(std::string_view glossary_text,
                                           const HeadwordRule &rule = {});

// Union of the headwords of every glossary. Throws kNoEntries if the
// result is empty; non-glossary documents are ignored.
GlossaryIndex build_glossary_index(std::span<const IngestedDocument> sources,
                                   const HeadwordRule &rule = {});

struct PairCandidate {
  std::string sentence;
  size_t first_term = 0;
  uint64_t sampled_with_seed = 0;
  std::string surface;

  friend bool operator==(const PairCandidate &, const PairCandidate &) = default;
};

// Draws n distinct (sentence, token) positions uniformly without
// replacement among tokens whose normalized surface is a glossary headword.
// Eligible positions are enumerated in (source id, sentence, token) order,
// then a partial Fisher-Yates shuffle driven by SplitMix64(seed) picks them.
// Output is in draw order.
std::vector<PairCandidate> sample_first_terms(std::span<const IngestedDocument> documents,
                                              const GlossaryIndex &index, uint64_t seed,
                                              size_t n);

struct SourceStats {
  std::string id;
  SourceKind kind = SourceKind::kArticle;
  size_t sentences = 0;
  size_t tokens = 0;
};

struct CorpusStats {
  std::vector<SourceStats> sources;
  size_t total_sentences = 0;
  size_t total_tokens = 0;
};

CorpusStats corpus_stats(std::span<const IngestedDocument> documents);

// Frozen view of a corpus: documents sorted by id, a sentence lookup, and
// the glossary index when any glossary has entries.
class CorpusSnapshot {
 public:
  explicit CorpusSnapshot(std::vector<IngestedDocument> documents);
  CorpusSnapshot(const CorpusSnapshot &) = delete;
  CorpusSnapshot &operator=(const CorpusSnapshot &) = delete;

  std::span<const IngestedDocument> documents() const { return documents_; }
  const Sentence *find_sentence(std::string_view id) const;
  const std::optional<GlossaryIndex> &glossary() const { return glossary_; }

 private:
  std::vector<IngestedDocument> documents_;
  std::unordered_map<std::string, const Sentence *> sentences_;
  std::optional<GlossaryIndex> glossary_;
};

// Single writer / many readers. Readers take a snapshot and never block
// subsequent writers.
class CorpusStore {
 public:
  void add(IngestedDocument doc);
  std::shared_ptr<const CorpusSnapshot> snapshot() const;

 private:
  mutable std::shared_mutex mu_;
  std::vector<IngestedDocument> documents_;
  mutable std::shared_ptr<const CorpusSnapshot> cached_;
};

// Reads <dir>/glossaries/*.txt and <dir>/articles/*.txt, ingesting files
// concurrently. Source ids are file stems and must be unique.
std::vector<IngestedDocument> load_corpus_dir(const std::filesystem::path &dir,
                                              const SplitterOptions &options = {});

}  // namespace semrel

#endif  // SEMREL_CORPUS_H_
