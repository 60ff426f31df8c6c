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

#include <random>

#include "semrel/alignment.h"
#include "test_support.h"

namespace semrel {
namespace {

using testing::seed;

AlignmentTable sample() {
  static const AlignmentTable table =
      load_alignment_file(testing::alignment_path().string(), seed());
  return table;
}

AlignmentErrorKind load_error(const std::string &text) {
  try {
    load_alignment(text, seed());
  } catch (const AlignmentError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return AlignmentErrorKind::kParse;
}

TEST(Alignment, SampleMapsMoneyToLegalPossessionEntity) {
  auto senses = sample().classes_for("money", Pos::kNoun);
  ASSERT_EQ(senses.size(), 1u);
  EXPECT_EQ(senses[0].class_id, "legal-possession-entity");
}

TEST(Alignment, SampleCoversQuotedLemmas) {
  for (const char *lemma : {"money", "loan", "shares", "income", "investment", "deal", "trend",
                            "agreement", "merger", "company", "bank", "assets", "funds"}) {
    EXPECT_FALSE(sample().classes_for(lemma, Pos::kNoun).empty()) << lemma;
  }
}

TEST(Alignment, BankHasTwoSensesInOrder) {
  auto senses = sample().classes_for("bank", Pos::kNoun);
  ASSERT_EQ(senses.size(), 2u);
  EXPECT_EQ(senses[0].sense_id, "1");
  EXPECT_EQ(senses[0].class_id, "social-role");
  EXPECT_EQ(senses[1].sense_id, "2");
  EXPECT_EQ(senses[1].class_id, "physical-object");
}

TEST(Alignment, SensesSortNaturally) {
  AlignmentTable t = load_alignment(
      "source = t\n[entries]\nrate | noun | 10 | quality | ten\n"
      "rate | noun | 2 | quality | two\nrate | noun | 1 | quality | one\n",
      seed());
  auto senses = t.classes_for("rate", Pos::kNoun);
  ASSERT_EQ(senses.size(), 3u);
  EXPECT_EQ(senses[0].sense_id, "1");
  EXPECT_EQ(senses[1].sense_id, "2");
  EXPECT_EQ(senses[2].sense_id, "10");
}

TEST(Alignment, QualityDefaultForAdjectivesAndAdverbs) {
  AlignmentTable empty = load_alignment("source = empty\n[entries]\n", seed());
  EXPECT_EQ(empty.size(), 0u);
  for (Pos pos : {Pos::kAdjective, Pos::kAdverb}) {
    auto senses = empty.classes_for("quick", pos);
    ASSERT_EQ(senses.size(), 1u);
    EXPECT_EQ(senses[0].sense_id, "default");
    EXPECT_EQ(senses[0].class_id, "quality");
  }
  EXPECT_TRUE(empty.classes_for("zzzz", Pos::kNoun).empty());
  EXPECT_TRUE(empty.classes_for("quick", Pos::kVerb).empty());
}

TEST(Alignment, ExplicitEntryWinsOverDefault) {
  AlignmentTable t = load_alignment(
      "source = t\n[entries]\nfixed | adjective | 1 | description | a fixed rate\n", seed());
  auto senses = t.classes_for("fixed", Pos::kAdjective);
  ASSERT_EQ(senses.size(), 1u);
  EXPECT_EQ(senses[0].class_id, "description");
}

TEST(Alignment, MultiwordLemmas) {
  auto senses = sample().classes_for("line of credit", Pos::kNoun);
  ASSERT_EQ(senses.size(), 1u);
  EXPECT_EQ(senses[0].class_id, "legal-possession-entity");
}

TEST(Alignment, Errors) {
  EXPECT_EQ(load_error("source = t\n[entries]\nx | noun | 1 | nonexistent | gloss\n"),
            AlignmentErrorKind::kUnknownClass);
  EXPECT_EQ(load_error("source = t\n[entries]\nx | noun | 1 | quality | a\n"
                       "x | noun | 1 | quality | b\n"),
            AlignmentErrorKind::kDuplicateKey);
  EXPECT_EQ(load_error("source = t\n[entries]\nx | pronoun | 1 | quality | a\n"),
            AlignmentErrorKind::kParse);
  EXPECT_EQ(load_error("source = t\n[entries]\nx | noun | 1\n"), AlignmentErrorKind::kParse);
}

TEST(Alignment, RoundTripIsIdentity) {
  AlignmentTable t = sample();
  AlignmentTable again = load_alignment(format_alignment(t), seed());
  EXPECT_EQ(again, t);
  EXPECT_EQ(format_alignment(again), format_alignment(t));
}

TEST(Alignment, EveryReturnedClassResolves) {
  std::mt19937_64 rng(3);
  const Pos all[] = {Pos::kNoun, Pos::kVerb, Pos::kAdjective, Pos::kAdverb};
  for (const SenseEntry &e : sample().entries()) {
    for (Pos pos : all) {
      for (const SenseClass &sc : sample().classes_for(e.lemma, pos)) {
        EXPECT_NE(seed().find_class(sc.class_id), nullptr);
      }
    }
  }
  for (int i = 0; i < 200; ++i) {
    std::string lemma(1 + rng() % 6, 'a');
    for (char &c : lemma) c = static_cast<char>('a' + rng() % 26);
    Pos pos = all[rng() % 4];
    auto senses = sample().classes_for(lemma, pos);
    bool known = false;
    for (const SenseEntry &e : sample().entries()) known |= e.lemma == lemma && e.pos == pos;
    if (!known) {
      bool modifier = pos == Pos::kAdjective || pos == Pos::kAdverb;
      EXPECT_EQ(senses.size(), modifier ? 1u : 0u) << lemma;
    }
  }
}

}  // namespace
}  // namespace semrel
