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


#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <thread>

#include "semrel/corpus.h"
#include "semrel/rng.h"
#include "test_support.h"

namespace semrel {
namespace {

namespace fs = std::filesystem;

const std::vector<IngestedDocument> &sample_docs() {
  static const std::vector<IngestedDocument> docs = load_corpus_dir(testing::corpus_dir());
  return docs;
}

const GlossaryIndex &sample_index() {
  static const GlossaryIndex index = build_glossary_index(sample_docs());
  return index;
}

// Independent token count: ASCII word runs, joined by '-' or '\'' between
// word characters and by '.' or ',' between digits.
size_t regex_token_count(const std::string &text) {
  static const std::regex word("[A-Za-z0-9]+(?:[-'][A-Za-z0-9]+|[.,][0-9]+)*");
  return std::distance(std::sregex_iterator(text.begin(), text.end(), word),
                       std::sregex_iterator());
}

std::vector<std::string> surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const Token &t : tokens) out.push_back(t.surface);
  return out;
}

TEST(SplitMix64, MatchesReferenceOutputs) {
  // Reference values of the published SplitMix64 generator for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformStaysInBound) {
  SplitMix64 rng(5);
  for (uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 1}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(rng.uniform(bound), bound);
  }
}

TEST(Tokenize, WordRulesAndOffsets) {
  std::string text = "Rates rose 0.75 points; the lender's co-signer paid $1,200.";
  auto tokens = tokenize(text);
  EXPECT_EQ(surfaces(tokens),
            (std::vector<std::string>{"Rates", "rose", "0.75", "points", "the", "lender's",
                                      "co-signer", "paid", "1,200"}));
  for (const Token &t : tokens) EXPECT_EQ(text.substr(t.start, t.end - t.start), t.surface);
  EXPECT_EQ(surfaces(tokenize("end. 5 -x x- 'q' a--b")),
            (std::vector<std::string>{"end", "5", "x", "x", "q", "a", "b"}));
}

TEST(Tokenize, Utf8PunctuationSeparatesWords) {
  auto tokens = tokenize("caf\xC3\xA9 \xE2\x80\x9Cquoted\xE2\x80\x9D");
  EXPECT_EQ(surfaces(tokens), (std::vector<std::string>{"caf\xC3\xA9", "quoted"}));
}

TEST(SplitSentences, TwoPlainSentences) {
  IngestedDocument doc = ingest("Rates rose. Prices fell.", SourceKind::kArticle, "a");
  ASSERT_EQ(doc.sentences.size(), 2u);
  EXPECT_EQ(doc.sentences[0].text, "Rates rose.");
  EXPECT_EQ(doc.sentences[1].text, "Prices fell.");
  EXPECT_EQ(doc.source.token_count, 4u);
  EXPECT_EQ(doc.sentences[1].id, "a:1");
}

TEST(SplitSentences, AbbreviationSuppressesSplit) {
  EXPECT_EQ(ingest("Mr. Smith paid.", SourceKind::kArticle, "a").sentences.size(), 1u);
  SplitterOptions none;
  none.abbreviations.clear();
  EXPECT_EQ(ingest("Mr. Smith paid.", SourceKind::kArticle, "a", none).sentences.size(), 2u);
}

TEST(SplitSentences, BoundaryRules) {
  auto texts = [](const std::string &raw) {
    std::vector<std::string> out;
    for (const Sentence &s : ingest(raw, SourceKind::kArticle, "a").sentences) out.push_back(s.text);
    return out;
  };
  EXPECT_EQ(texts("Is it due? Yes! It is."),
            (std::vector<std::string>{"Is it due?", "Yes!", "It is."}));
  EXPECT_EQ(texts("He said \"stop.\" Then left."),
            (std::vector<std::string>{"He said \"stop.\"", "Then left."}));
  EXPECT_EQ(texts("rates rose 2.5 percent. then fell."),
            (std::vector<std::string>{"rates rose 2.5 percent. then fell."}));
  EXPECT_EQ(texts("Title line\n\nBody text here."),
            (std::vector<std::string>{"Title line", "Body text here."}));
  EXPECT_EQ(texts("Use e.g. Bonds here."), (std::vector<std::string>{"Use e.g. Bonds here."}));
}

TEST(Ingest, EmptyDocumentIsAnError) {
  try {
    ingest(" \n\t\n", SourceKind::kArticle, "x");
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kEmptyDocument);
  }
}

TEST(Ingest, OffsetsReconstructTheText) {
  for (const IngestedDocument &doc : sample_docs()) {
    size_t last_end = 0;
    size_t tokens = 0;
    for (const Sentence &s : doc.sentences) {
      EXPECT_EQ(doc.text.substr(s.offset, s.text.size()), s.text);
      EXPECT_GE(s.offset, last_end);
      last_end = s.offset + s.text.size();
      size_t prev = 0;
      for (size_t i = 0; i < s.tokens.size(); ++i) {
        const Token &t = s.tokens[i];
        EXPECT_LT(t.start, t.end);
        EXPECT_LE(t.end, s.text.size());
        if (i > 0) {
          EXPECT_GE(t.start, prev);
        }
        prev = t.end;
        EXPECT_EQ(s.text.substr(t.start, t.end - t.start), t.surface);
      }
      tokens += s.tokens.size();
    }
    EXPECT_EQ(doc.source.token_count, tokens);
  }
}

TEST(Ingest, SampleCorpusMatchesIndependentRecount) {
  ASSERT_EQ(sample_docs().size(), 3u);
  size_t total = 0;
  for (const IngestedDocument &doc : sample_docs()) {
    // The oracle's digit-joining shortcut is exact only when no letter is
    // directly followed by '.' or ',' and a digit.
    ASSERT_FALSE(std::regex_search(doc.text, std::regex("[A-Za-z][.,][0-9]")));
    ASSERT_TRUE(std::all_of(doc.text.begin(), doc.text.end(),
                            [](char c) { return static_cast<unsigned char>(c) < 0x80; }));
    EXPECT_EQ(doc.source.token_count, regex_token_count(doc.text)) << doc.source.id;
    total += doc.source.token_count;
  }
  CorpusStats st = corpus_stats(sample_docs());
  EXPECT_EQ(st.total_tokens, total);
}

TEST(CorpusStats, Additivity) {
  EXPECT_EQ(corpus_stats({}).total_tokens, 0u);
  std::vector<IngestedDocument> docs;
  docs.push_back(ingest("one two three four five six seven eight nine ten",
                        SourceKind::kArticle, "a"));
  docs.push_back(ingest("a b c d e f g h i j k l m n o", SourceKind::kArticle, "b"));
  CorpusStats st = corpus_stats(docs);
  EXPECT_EQ(st.sources.size(), 2u);
  EXPECT_EQ(st.sources[0].tokens, 10u);
  EXPECT_EQ(st.sources[1].tokens, 15u);
  EXPECT_EQ(st.total_tokens, 25u);
}

TEST(GlossaryIndex, HeadwordsAndUnion) {
  std::vector<IngestedDocument> docs;
  docs.push_back(ingest("arbitrage: simultaneous purchase and sale.\n\nYield: income.\n",
                        SourceKind::kGlossary, "g1"));
  docs.push_back(ingest("yield\tthe return on an investment.\n\nBond: a debt security.\n",
                        SourceKind::kGlossary, "g2"));
  docs.push_back(ingest("Ignored: article text.", SourceKind::kArticle, "a"));
  GlossaryIndex index = build_glossary_index(docs);
  EXPECT_EQ(index.headwords(), (std::set<std::string>{"arbitrage", "bond", "yield"}));
  EXPECT_TRUE(index.contains("arbitrage"));
  EXPECT_FALSE(index.contains("ignored"));
}

TEST(GlossaryIndex, SampleSizeMatchesBlockCount) {
  std::set<std::string> hand;
  for (const auto &entry : fs::directory_iterator(testing::corpus_dir() / "glossaries")) {
    std::string text = testing::read_file(entry.path());
    size_t pos = 0;
    while (pos < text.size()) {
      size_t end = text.find("\n\n", pos);
      if (end == std::string::npos) end = text.size();
      std::string block = text.substr(pos, end - pos);
      size_t colon = block.find(':');
      if (colon != std::string::npos) {
        std::string head = block.substr(0, colon);
        std::transform(head.begin(), head.end(), head.begin(), ::tolower);
        hand.insert(head);
      }
      pos = end + 2;
    }
  }
  EXPECT_EQ(sample_index().size(), hand.size());
  EXPECT_EQ(sample_index().headwords(), hand);
}

TEST(GlossaryIndex, NoEntriesIsAnError) {
  std::vector<IngestedDocument> docs;
  docs.push_back(ingest("Just an article.", SourceKind::kArticle, "a"));
  try {
    build_glossary_index(docs);
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kNoEntries);
  }
}

TEST(NormalizeTerm, LowercaseAndStrip) {
  EXPECT_EQ(normalize_term("  \"Loan,\" "), "loan");
  EXPECT_EQ(normalize_term("Co-Signer"), "co-signer");
  EXPECT_EQ(normalize_term("..."), "");
}

TEST(Sampler, ZeroIsEmpty) {
  EXPECT_TRUE(sample_first_terms(sample_docs(), sample_index(), 42, 0).empty());
}

TEST(Sampler, DeterministicForASeed) {
  auto a = sample_first_terms(sample_docs(), sample_index(), 42, 25);
  auto b = sample_first_terms(sample_docs(), sample_index(), 42, 25);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 25u);
  EXPECT_NE(a, sample_first_terms(sample_docs(), sample_index(), 43, 25));
}

TEST(Sampler, EveryDrawIsGlossaryListedAndDistinct) {
  CorpusSnapshot snap(load_corpus_dir(testing::corpus_dir()));
  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto picks = sample_first_terms(sample_docs(), sample_index(), seed, 10);
    ASSERT_EQ(picks.size(), 10u);
    std::set<std::pair<std::string, size_t>> positions;
    for (const PairCandidate &c : picks) {
      const Sentence *s = snap.find_sentence(c.sentence);
      ASSERT_NE(s, nullptr);
      ASSERT_LT(c.first_term, s->tokens.size());
      EXPECT_EQ(s->tokens[c.first_term].surface, c.surface);
      EXPECT_TRUE(sample_index().contains(normalize_term(c.surface))) << c.surface;
      EXPECT_EQ(c.sampled_with_seed, seed);
      EXPECT_TRUE(positions.insert({c.sentence, c.first_term}).second);
    }
  }
}

TEST(Sampler, InsufficientEligibleTokens) {
  size_t eligible = 0;
  for (const IngestedDocument &d : sample_docs()) {
    for (const Sentence &s : d.sentences) {
      for (const Token &t : s.tokens) eligible += sample_index().contains(normalize_term(t.surface));
    }
  }
  EXPECT_GE(eligible, 25u);
  EXPECT_EQ(sample_first_terms(sample_docs(), sample_index(), 1, eligible).size(), eligible);
  try {
    sample_first_terms(sample_docs(), sample_index(), 1, eligible + 1);
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kInsufficientEligible);
  }
}

TEST(Sampler, IndependentOfIngestionOrder) {
  std::vector<IngestedDocument> shuffled = sample_docs();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(sample_first_terms(shuffled, sample_index(), 42, 25),
              sample_first_terms(sample_docs(), sample_index(), 42, 25));
  }
}

TEST(Sampler, SingleDrawsAreRoughlyUniform) {
  std::vector<IngestedDocument> docs;
  docs.push_back(ingest("loan: a sum lent.\n", SourceKind::kGlossary, "g"));
  docs.push_back(ingest("Loan loan loan loan.", SourceKind::kArticle, "a"));
  GlossaryIndex index = build_glossary_index(docs);
  std::map<std::pair<std::string, size_t>, int> counts;
  const int trials = 5000;
  for (int seed = 0; seed < trials; ++seed) {
    auto p = sample_first_terms(docs, index, seed, 1);
    ++counts[{p[0].sentence, p[0].first_term}];
  }
  // Five eligible positions: the glossary headword and four article tokens.
  ASSERT_EQ(counts.size(), 5u);
  for (const auto &[pos, n] : counts) {
    EXPECT_GT(n, trials / 5 - 200);
    EXPECT_LT(n, trials / 5 + 200);
  }
}

TEST(CorpusDir, DuplicateStemsAreRejected) {
  testing::TempDir dir;
  fs::create_directories(dir / "glossaries");
  fs::create_directories(dir / "articles");
  testing::write_file(dir / "glossaries" / "x.txt", "loan: a sum.\n");
  testing::write_file(dir / "articles" / "x.txt", "A loan.\n");
  try {
    load_corpus_dir(dir.path());
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kDuplicateSource);
  }
}

TEST(CorpusStore, ReadersKeepTheirSnapshot) {
  CorpusStore store;
  store.add(ingest("loan: a sum.\n", SourceKind::kGlossary, "g"));
  auto before = store.snapshot();
  std::atomic<bool> stop{false};
  std::thread reader([&] {
    while (!stop) {
      auto snap = store.snapshot();
      ASSERT_GE(snap->documents().size(), 1u);
    }
  });
  for (int i = 0; i < 50; ++i) {
    store.add(ingest("Loan " + std::to_string(i) + ".", SourceKind::kArticle,
                     "a" + std::to_string(i)));
  }
  stop = true;
  reader.join();
  EXPECT_EQ(before->documents().size(), 1u);
  EXPECT_EQ(store.snapshot()->documents().size(), 51u);
  EXPECT_NE(store.snapshot()->find_sentence("a7:0"), nullptr);
  try {
    store.add(ingest("dup.", SourceKind::kArticle, "a7"));
    FAIL();
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kDuplicateSource);
  }
}

}  // namespace
}  // namespace semrel
