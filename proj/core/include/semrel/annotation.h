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

#ifndef SEMREL_ANNOTATION_H_
#define SEMREL_ANNOTATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semrel/error.h"
#include "semrel/inventory.h"

namespace semrel {

class CorpusSnapshot;

enum class UnclassifiedReason { kTooDistant, kDifferentClauses, kNoRelationFound };
enum class ReviewStatus { kDraft, kReviewed };
enum class Status { kDirect, kComposite, kUnclassified, kPending };

std::string_view to_string(UnclassifiedReason reason);
std::string_view to_string(ReviewStatus status);
std::string_view to_string(Status status);
std::optional<UnclassifiedReason> parse_unclassified_reason(std::string_view s);
std::optional<ReviewStatus> parse_review_status(std::string_view s);
std::optional<Status> parse_status(std::string_view s);

struct CharSpan {
  size_t start = 0;
  size_t end = 0;

  friend bool operator==(const CharSpan &, const CharSpan &) = default;
};

// A concept occurrence. Chain-intermediate concepts may omit the span.
struct ConceptMention {
  std::string term;
  std::string sentence;
  std::optional<CharSpan> span;
  std::optional<std::string> assigned_class;
  std::optional<std::string> sense_id;

  friend bool operator==(const ConceptMention &, const ConceptMention &) = default;
};

// relation(source, target) when forward; the inverse reading of the
// relation when Direction::kInverse.
struct RelationLink {
  ConceptMention source;
  std::string relation;
  Direction direction = Direction::kForward;
  ConceptMention target;

  friend bool operator==(const RelationLink &, const RelationLink &) = default;
};

struct DirectAssignment {
  RelationLink link;
  // Accept a link whose signature check fails; requires a justification.
  bool override_signature = false;
  std::string justification;

  friend bool operator==(const DirectAssignment &, const DirectAssignment &) = default;
};

struct CompositeAssignment {
  std::vector<RelationLink> chain;

  friend bool operator==(const CompositeAssignment &, const CompositeAssignment &) = default;
};

struct UnclassifiedAssignment {
  UnclassifiedReason reason = UnclassifiedReason::kNoRelationFound;

  friend bool operator==(const UnclassifiedAssignment &,
                         const UnclassifiedAssignment &) = default;
};

using Assignment = std::variant<DirectAssignment, CompositeAssignment, UnclassifiedAssignment>;

struct AnnotationRecord {
  std::string id;
  ConceptMention first;
  ConceptMention second;
  std::string sentence;
  std::optional<Assignment> assignment;
  std::map<std::string, double> relatedness;
  ReviewStatus review_status = ReviewStatus::kDraft;
  uint64_t version = 1;
  std::string created_at;
  std::string updated_at;
  // Fingerprint of the request that produced this version; lets a retried
  // mutation be recognised and answered without re-applying it.
  std::string mutation_token;

  std::optional<double> mean_relatedness() const;

  friend bool operator==(const AnnotationRecord &, const AnnotationRecord &) = default;
};

enum class ViolationKind {
  kEmptyChain,
  kStartMismatch,
  kEndMismatch,
  kBrokenContiguity,
  kUnknownRelation,
  kNoInverse,
  kMissingClass,
  kUnknownClass,
  kSignature,
  kTooShort,
  kSentenceMismatch,
  kSpanOutOfRange,
  kPairMismatch,
  kMissingJustification,
  kScoreOutOfRange,
};

std::string_view to_string(ViolationKind kind);

struct AnnotationViolation {
  ViolationKind kind;
  // Index of the offending link, or -1 when not link-specific.
  int link = -1;
  std::string message;
};

enum class AnnotationErrorKind {
  kMissingClass,
  kUnclassifiedHasNoLength,
  kScoreOutOfRange,
  kValidationFailed,
};

class AnnotationError : public KindedError<AnnotationErrorKind> {
 public:
  AnnotationError(AnnotationErrorKind kind, const std::string &message,
                  std::vector<AnnotationViolation> violations = {})
      : KindedError(kind, message), violations_(std::move(violations)) {}

  const std::vector<AnnotationViolation> &violations() const { return violations_; }

 private:
  std::vector<AnnotationViolation> violations_;
};

// candidate_relations over the pair's assigned classes, both orders.
// Throws kMissingClass when either mention lacks a class.
std::vector<Candidate> suggest_relations(const AnnotationRecord &record, const Inventory &inv);

// Checks a composite chain against the pair (first, second): endpoints,
// contiguity, per-link signatures and minimum length 2. Empty means valid.
std::vector<AnnotationViolation> validate_chain(const std::vector<RelationLink> &chain,
                                                const ConceptMention &first,
                                                const ConceptMention &second,
                                                const Inventory &inv);

// Signature check for a single link.
std::vector<AnnotationViolation> validate_link(const RelationLink &link, const Inventory &inv,
                                               int index = -1);

// Full write-time check: pair/sentence consistency, spans (when the
// sentence is known to `corpus`), class ids, the assignment and scores.
std::vector<AnnotationViolation> validate_record(const AnnotationRecord &record,
                                                 const Inventory &inv,
                                                 const CorpusSnapshot *corpus = nullptr);

// 1 for Direct, number of links for Composite. Throws
// kUnclassifiedHasNoLength for Unclassified or absent assignments.
size_t chain_length(const Assignment &assignment);

Status classify_status(const AnnotationRecord &record);

// Mutators return the updated record with the version bumped.
AnnotationRecord set_relatedness(AnnotationRecord record, const std::string &annotator,
                                 double score);

// Throws AnnotationError(kValidationFailed) with the violations when the
// assignment is not acceptable for the record.
AnnotationRecord set_assignment(AnnotationRecord record, std::optional<Assignment> assignment,
                                const Inventory &inv);

// Rewrites relation aliases ("used-in") to their canonical relation with
// the direction flipped. Unknown names are left for validation to report.
Assignment canonicalize_assignment(Assignment assignment, const Inventory &inv);

AnnotationRecord set_review_status(AnnotationRecord record, ReviewStatus status);

inline constexpr double kMinRelatedness = 0.0;
inline constexpr double kMaxRelatedness = 10.0;

}  // namespace semrel

#endif  // SEMREL_ANNOTATION_H_
