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

#include "semrel/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>

#include "semrel/rng.h"
#include "text_util.h"

namespace semrel {

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::kGlossary ? "glossary" : "article";
}

std::set<std::string> SplitterOptions::default_abbreviations() {
  return {"mr.", "mrs.", "ms.", "dr.", "prof.", "inc.", "ltd.", "co.", "corp.",
          "jr.", "sr.", "st.", "vs.", "e.g.", "i.e.", "no.", "approx.", "dept."};
}

namespace {

struct Glyph {
  size_t len;
  bool word;
};

// Classifies the UTF-8 sequence at `i`. Non-ASCII code points count as
// word characters except Latin-1 punctuation/symbols, general punctuation
// (curly quotes, dashes) and currency signs.
Glyph glyph_at(std::string_view s, size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return {1, std::isalnum(c) != 0};
  size_t len = 1;
  uint32_t cp = c;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else {
    return {1, false};
  }
  if (i + len > s.size()) return {s.size() - i, false};
  for (size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  }
  bool punct = (cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
               (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x20A0 && cp <= 0x20CF) ||
               (cp >= 0x3000 && cp <= 0x303F);
  return {len, !punct};
}

bool is_digit(std::string_view s, size_t i) {
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

bool word_at(std::string_view s, size_t i) { return i < s.size() && glyph_at(s, i).word; }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool is_opener(char c) { return c == '"' || c == '\'' || c == '('; }

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

// [begin, end) ranges of paragraphs, i.e. text between blank lines.
std::vector<std::pair<size_t, size_t>> paragraphs(std::string_view text) {
  std::vector<std::pair<size_t, size_t>> out;
  size_t para_start = std::string_view::npos;
  size_t para_end = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    bool blank = text::trim(text.substr(pos, line_end - pos)).empty();
    if (blank) {
      if (para_start != std::string_view::npos) out.push_back({para_start, para_end});
      para_start = std::string_view::npos;
    } else {
      if (para_start == std::string_view::npos) para_start = pos;
      para_end = line_end;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (para_start != std::string_view::npos) out.push_back({para_start, para_end});
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    Glyph g = glyph_at(text, i);
    if (!g.word) {
      i += g.len;
      continue;
    }
    size_t start = i;
    i += g.len;
    for (;;) {
      if (i >= text.size()) break;
      Glyph next = glyph_at(text, i);
      if (next.word) {
        i += next.len;
        continue;
      }
      char c = text[i];
      if ((c == '-' || c == '\'') && word_at(text, i + 1)) {
        i += 1;
        continue;
      }
      if ((c == '.' || c == ',') && is_digit(text, i - 1) && is_digit(text, i + 1)) {
        i += 1;
        continue;
      }
      break;
    }
    tokens.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text, std::string_view source_id,
                                      const SplitterOptions &options) {
  std::vector<Sentence> out;
  auto emit = [&](size_t b, size_t e) {
    std::string_view raw = text.substr(b, e - b);
    std::string_view t = text::trim(raw);
    if (t.empty()) return;
    Sentence s;
    s.offset = b + static_cast<size_t>(t.data() - raw.data());
    s.text = std::string(t);
    s.source = std::string(source_id);
    s.id = std::string(source_id) + ":" + std::to_string(out.size());
    s.tokens = tokenize(s.text);
    out.push_back(std::move(s));
  };

  for (auto [pb, pe] : paragraphs(text)) {
    size_t start = pb;
    for (size_t i = pb; i < pe; ++i) {
      char c = text[i];
      if (c != '.' && c != '!' && c != '?') continue;
      size_t j = i + 1;
      while (j < pe && is_closer(text[j])) ++j;
      if (j >= pe || !is_space(text[j])) continue;
      size_t k = j;
      while (k < pe && is_space(text[k])) ++k;
      if (k >= pe) continue;
      bool upper = is_upper(text[k]) || (is_opener(text[k]) && k + 1 < pe && is_upper(text[k + 1]));
      if (!upper) continue;
      if (c == '.') {
        size_t w = i;
        while (w > pb && !is_space(text[w - 1])) --w;
        while (w < i && is_opener(text[w])) ++w;
        if (options.abbreviations.count(text::to_lower(text.substr(w, i + 1 - w)))) continue;
      }
      emit(start, j);
      start = k;
      i = k - 1;
    }
    emit(start, pe);
  }
  return out;
}

IngestedDocument ingest(std::string_view raw, SourceKind kind, std::string name,
                        const SplitterOptions &options) {
  if (text::trim(raw).empty()) {
    throw CorpusError(CorpusErrorKind::kEmptyDocument, "document '" + name + "' is empty");
  }
  IngestedDocument doc;
  doc.source.id = name;
  doc.source.kind = kind;
  doc.source.name = std::move(name);
  doc.text = std::string(raw);
  doc.sentences = split_sentences(doc.text, doc.source.id, options);
  for (const Sentence &s : doc.sentences) doc.source.token_count += s.tokens.size();
  return doc;
}

std::string normalize_term(std::string_view s) {
  std::string_view t = text::trim(s);
  auto punct = [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  };
  while (!t.empty() && punct(t.front())) t.remove_prefix(1);
  while (!t.empty() && punct(t.back())) t.remove_suffix(1);
  return text::to_lower(text::trim(t));
}

std::vector<std::string> extract_headwords(std::string_view glossary_text,
                                           const HeadwordRule &rule) {
  std::vector<std::string> out;
  for (auto [pb, pe] : paragraphs(glossary_text)) {
    std::string_view block = glossary_text.substr(pb, pe - pb);
    std::string_view first = block.substr(0, block.find('\n'));
    size_t cut = first.find_first_of(rule.delimiters);
    if (cut == std::string_view::npos) continue;
    std::string term = normalize_term(first.substr(0, cut));
    if (!term.empty()) out.push_back(std::move(term));
  }
  return out;
}

GlossaryIndex build_glossary_index(std::span<const IngestedDocument> sources,
                                   const HeadwordRule &rule) {
  std::set<std::string> headwords;
  for (const IngestedDocument &doc : sources) {
    if (doc.source.kind != SourceKind::kGlossary) continue;
    for (std::string &h : extract_headwords(doc.text, rule)) headwords.insert(std::move(h));
  }
  if (headwords.empty()) {
    throw CorpusError(CorpusErrorKind::kNoEntries, "no glossary entries to index");
  }
  return GlossaryIndex(std::move(headwords));
}

std::vector<PairCandidate> sample_first_terms(std::span<const IngestedDocument> documents,
                                              const GlossaryIndex &index, uint64_t seed,
                                              size_t n) {
  std::vector<const IngestedDocument *> ordered;
  for (const IngestedDocument &d : documents) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(), [](const auto *a, const auto *b) {
    return a->source.id < b->source.id;
  });

  struct Position {
    const Sentence *sentence;
    size_t token;
  };
  std::vector<Position> eligible;
  for (const IngestedDocument *d : ordered) {
    for (const Sentence &s : d->sentences) {
      for (size_t t = 0; t < s.tokens.size(); ++t) {
        if (index.contains(normalize_term(s.tokens[t].surface))) eligible.push_back({&s, t});
      }
    }
  }
  if (eligible.size() < n) {
    throw CorpusError(CorpusErrorKind::kInsufficientEligible,
                      "requested " + std::to_string(n) + " first terms but only " +
                          std::to_string(eligible.size()) + " tokens are glossary-listed");
  }

  SplitMix64 rng(seed);
  std::vector<PairCandidate> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(rng.uniform(eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
    const Position &p = eligible[i];
    out.push_back({p.sentence->id, p.token, seed, p.sentence->tokens[p.token].surface});
  }
  return out;
}

CorpusStats corpus_stats(std::span<const IngestedDocument> documents) {
  CorpusStats stats;
  for (const IngestedDocument &d : documents) {
    SourceStats s{d.source.id, d.source.kind, d.sentences.size(), d.source.token_count};
    stats.total_sentences += s.sentences;
    stats.total_tokens += s.tokens;
    stats.sources.push_back(std::move(s));
  }
  return stats;
}

CorpusSnapshot::CorpusSnapshot(std::vector<IngestedDocument> documents)
    : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const auto &a, const auto &b) { return a.source.id < b.source.id; });
  for (const IngestedDocument &d : documents_) {
    for (const Sentence &s : d.sentences) sentences_.emplace(s.id, &s);
  }
  try {
    glossary_ = build_glossary_index(documents_);
  } catch (const CorpusError &) {
    glossary_.reset();
  }
}

const Sentence *CorpusSnapshot::find_sentence(std::string_view id) const {
  auto it = sentences_.find(std::string(id));
  return it == sentences_.end() ? nullptr : it->second;
}

void CorpusStore::add(IngestedDocument doc) {
  std::unique_lock lock(mu_);
  for (const IngestedDocument &d : documents_) {
    if (d.source.id == doc.source.id) {
      throw CorpusError(CorpusErrorKind::kDuplicateSource,
                        "source '" + doc.source.id + "' already ingested");
    }
  }
  documents_.push_back(std::move(doc));
  cached_.reset();
}

std::shared_ptr<const CorpusSnapshot> CorpusStore::snapshot() const {
  {
    std::shared_lock lock(mu_);
    if (cached_) return cached_;
  }
  std::unique_lock lock(mu_);
  if (!cached_) cached_ = std::make_shared<const CorpusSnapshot>(documents_);
  return cached_;
}

std::vector<IngestedDocument> load_corpus_dir(const std::filesystem::path &dir,
                                              const SplitterOptions &options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw CorpusError(CorpusErrorKind::kIo, "corpus directory not found: " + dir.string());
  }
  struct Job {
    fs::path path;
    SourceKind kind;
  };
  std::vector<Job> jobs;
  for (auto [sub, kind] : {std::pair{"glossaries", SourceKind::kGlossary},
                           std::pair{"articles", SourceKind::kArticle}}) {
    fs::path p = dir / sub;
    if (!fs::is_directory(p)) continue;
    for (const auto &entry : fs::directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        jobs.push_back({entry.path(), kind});
      }
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job &a, const Job &b) {
    return a.path.filename() < b.path.filename();
  });

  std::vector<std::future<IngestedDocument>> futures;
  for (const Job &job : jobs) {
    futures.push_back(std::async(std::launch::async, [job, &options] {
      std::ifstream in(job.path, std::ios::binary);
      if (!in) throw CorpusError(CorpusErrorKind::kIo, "cannot read " + job.path.string());
      std::stringstream buffer;
      buffer << in.rdbuf();
      return ingest(buffer.str(), job.kind, job.path.stem().string(), options);
    }));
  }
  std::vector<IngestedDocument> docs;
  std::set<std::string> ids;
  for (auto &f : futures) {
    IngestedDocument d = f.get();
    if (!ids.insert(d.source.id).second) {
      throw CorpusError(CorpusErrorKind::kDuplicateSource,
                        "duplicate source id '" + d.source.id + "'");
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace semrel
