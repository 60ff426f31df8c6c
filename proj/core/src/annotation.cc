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

#include "semrel/annotation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semrel/corpus.h"
#include "text_util.h"

namespace semrel {

std::string_view to_string(UnclassifiedReason reason) {
  switch (reason) {
    case UnclassifiedReason::kTooDistant: return "too-distant";
    case UnclassifiedReason::kDifferentClauses: return "different-clauses";
    case UnclassifiedReason::kNoRelationFound: return "no-relation-found";
  }
  return "no-relation-found";
}

std::string_view to_string(ReviewStatus status) {
  return status == ReviewStatus::kDraft ? "draft" : "reviewed";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kDirect: return "direct";
    case Status::kComposite: return "composite";
    case Status::kUnclassified: return "unclassified";
    case Status::kPending: return "pending";
  }
  return "pending";
}

std::optional<UnclassifiedReason> parse_unclassified_reason(std::string_view s) {
  if (s == "too-distant") return UnclassifiedReason::kTooDistant;
  if (s == "different-clauses") return UnclassifiedReason::kDifferentClauses;
  if (s == "no-relation-found") return UnclassifiedReason::kNoRelationFound;
  return std::nullopt;
}

std::optional<ReviewStatus> parse_review_status(std::string_view s) {
  if (s == "draft") return ReviewStatus::kDraft;
  if (s == "reviewed") return ReviewStatus::kReviewed;
  return std::nullopt;
}

std::optional<Status> parse_status(std::string_view s) {
  if (s == "direct") return Status::kDirect;
  if (s == "composite") return Status::kComposite;
  if (s == "unclassified") return Status::kUnclassified;
  if (s == "pending") return Status::kPending;
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEmptyChain: return "empty-chain";
    case ViolationKind::kStartMismatch: return "start-mismatch";
    case ViolationKind::kEndMismatch: return "end-mismatch";
    case ViolationKind::kBrokenContiguity: return "broken-contiguity";
    case ViolationKind::kUnknownRelation: return "unknown-relation";
    case ViolationKind::kNoInverse: return "no-inverse";
    case ViolationKind::kMissingClass: return "missing-class";
    case ViolationKind::kUnknownClass: return "unknown-class";
    case ViolationKind::kSignature: return "signature";
    case ViolationKind::kTooShort: return "too-short";
    case ViolationKind::kSentenceMismatch: return "sentence-mismatch";
    case ViolationKind::kSpanOutOfRange: return "span-out-of-range";
    case ViolationKind::kPairMismatch: return "pair-mismatch";
    case ViolationKind::kMissingJustification: return "missing-justification";
    case ViolationKind::kScoreOutOfRange: return "score-out-of-range";
  }
  return "unknown";
}

std::optional<double> AnnotationRecord::mean_relatedness() const {
  if (relatedness.empty()) return std::nullopt;
  double sum = 0;
  for (const auto &[annotator, score] : relatedness) sum += score;
  return sum / static_cast<double>(relatedness.size());
}

namespace {

bool same_term(std::string_view a, std::string_view b) {
  return text::to_lower(text::trim(a)) == text::to_lower(text::trim(b));
}

std::string describe(const RelationLink &link) {
  return link.source.term + " -" + link.relation +
         (link.direction == Direction::kInverse ? "(inverse)" : "") + "-> " + link.target.term;
}

bool score_in_range(double score) {
  return std::isfinite(score) && score >= kMinRelatedness && score <= kMaxRelatedness;
}

}  // namespace

std::vector<Candidate> suggest_relations(const AnnotationRecord &record, const Inventory &inv) {
  if (!record.first.assigned_class || !record.second.assigned_class) {
    throw AnnotationError(AnnotationErrorKind::kMissingClass,
                          "record '" + record.id + "': both concepts need a class");
  }
  return inv.candidate_relations(*record.first.assigned_class, *record.second.assigned_class,
                                 true);
}

std::vector<AnnotationViolation> validate_link(const RelationLink &link, const Inventory &inv,
                                               int index) {
  std::vector<AnnotationViolation> out;
  const RelationDef *r = inv.find_relation(link.relation);
  if (r == nullptr) {
    out.push_back({ViolationKind::kUnknownRelation, index,
                   "unknown relation '" + link.relation + "'"});
    return out;
  }
  if (link.direction == Direction::kInverse && !r->has_inverse_reading()) {
    out.push_back({ViolationKind::kNoInverse, index,
                   "relation '" + r->id + "' has no inverse reading"});
    return out;
  }
  bool classes_ok = true;
  for (const ConceptMention *m : {&link.source, &link.target}) {
    if (!m->assigned_class) {
      out.push_back({ViolationKind::kMissingClass, index,
                     "concept '" + m->term + "' has no class"});
      classes_ok = false;
    } else if (inv.find_class(*m->assigned_class) == nullptr) {
      out.push_back({ViolationKind::kUnknownClass, index,
                     "class '" + *m->assigned_class + "' is not in the inventory"});
      classes_ok = false;
    }
  }
  if (!classes_ok) return out;
  if (!inv.admits(*r, link.direction, *link.source.assigned_class,
                  *link.target.assigned_class)) {
    const bool fwd = link.direction == Direction::kForward;
    out.push_back({ViolationKind::kSignature, index,
                   describe(link) + ": (" + *link.source.assigned_class + ", " +
                       *link.target.assigned_class + ") does not fit " +
                       (fwd ? "(" + r->domain + ", " + r->range + ")"
                            : "the inverse of (" + r->domain + ", " + r->range + ")")});
  }
  return out;
}

std::vector<AnnotationViolation> validate_chain(const std::vector<RelationLink> &chain,
                                                const ConceptMention &first,
                                                const ConceptMention &second,
                                                const Inventory &inv) {
  std::vector<AnnotationViolation> out;
  if (chain.empty()) {
    out.push_back({ViolationKind::kEmptyChain, -1, "chain has no links"});
    return out;
  }
  if (!same_term(chain.front().source.term, first.term)) {
    out.push_back({ViolationKind::kStartMismatch, 0,
                   "chain starts at '" + chain.front().source.term + "', expected '" +
                       first.term + "'"});
  }
  const int last = static_cast<int>(chain.size()) - 1;
  if (!same_term(chain.back().target.term, second.term)) {
    out.push_back({ViolationKind::kEndMismatch, last,
                   "chain ends at '" + chain.back().target.term + "', expected '" +
                       second.term + "'"});
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!same_term(chain[i].target.term, chain[i + 1].source.term)) {
      out.push_back({ViolationKind::kBrokenContiguity, static_cast<int>(i + 1),
                     "link " + std::to_string(i + 1) + " starts at '" +
                         chain[i + 1].source.term + "' but link " + std::to_string(i) +
                         " ends at '" + chain[i].target.term + "'"});
    }
  }
  for (size_t i = 0; i < chain.size(); ++i) {
    auto v = validate_link(chain[i], inv, static_cast<int>(i));
    out.insert(out.end(), v.begin(), v.end());
  }
  if (chain.size() < 2) {
    out.push_back({ViolationKind::kTooShort, -1,
                   "a composite chain needs at least 2 links; use a direct assignment"});
  }
  return out;
}

std::vector<AnnotationViolation> validate_record(const AnnotationRecord &record,
                                                 const Inventory &inv,
                                                 const CorpusSnapshot *corpus) {
  std::vector<AnnotationViolation> out;
  const Sentence *sentence = corpus ? corpus->find_sentence(record.sentence) : nullptr;

  for (const ConceptMention *m : {&record.first, &record.second}) {
    if (m->sentence != record.sentence) {
      out.push_back({ViolationKind::kSentenceMismatch, -1,
                     "concept '" + m->term + "' cites sentence '" + m->sentence +
                         "', record cites '" + record.sentence + "'"});
    }
    if (m->assigned_class && inv.find_class(*m->assigned_class) == nullptr) {
      out.push_back({ViolationKind::kUnknownClass, -1,
                     "class '" + *m->assigned_class + "' is not in the inventory"});
    }
    if (m->span && sentence != nullptr) {
      if (m->span->start >= m->span->end || m->span->end > sentence->text.size()) {
        out.push_back({ViolationKind::kSpanOutOfRange, -1,
                       "span of '" + m->term + "' lies outside the sentence"});
      }
    }
  }

  for (const auto &[annotator, score] : record.relatedness) {
    if (!score_in_range(score)) {
      out.push_back({ViolationKind::kScoreOutOfRange, -1,
                     "score from '" + annotator + "' is outside [0, 10]"});
    }
  }

  if (!record.assignment) return out;
  if (const auto *direct = std::get_if<DirectAssignment>(&*record.assignment)) {
    const RelationLink &link = direct->link;
    bool forward = same_term(link.source.term, record.first.term) &&
                   same_term(link.target.term, record.second.term);
    bool backward = same_term(link.source.term, record.second.term) &&
                    same_term(link.target.term, record.first.term);
    if (!forward && !backward) {
      out.push_back({ViolationKind::kPairMismatch, 0,
                     "direct link " + describe(link) + " does not connect the pair"});
    }
    auto v = validate_link(link, inv, 0);
    bool only_signature = !v.empty() && std::all_of(v.begin(), v.end(), [](const auto &x) {
      return x.kind == ViolationKind::kSignature;
    });
    if (direct->override_signature && only_signature) {
      if (text::trim(direct->justification).empty()) {
        out.push_back({ViolationKind::kMissingJustification, 0,
                       "signature override needs a justification"});
      }
    } else {
      out.insert(out.end(), v.begin(), v.end());
    }
  } else if (const auto *composite = std::get_if<CompositeAssignment>(&*record.assignment)) {
    auto v = validate_chain(composite->chain, record.first, record.second, inv);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

size_t chain_length(const Assignment &assignment) {
  if (std::holds_alternative<DirectAssignment>(assignment)) return 1;
  if (const auto *c = std::get_if<CompositeAssignment>(&assignment)) return c->chain.size();
  throw AnnotationError(AnnotationErrorKind::kUnclassifiedHasNoLength,
                        "an unclassified assignment has no chain length");
}

Status classify_status(const AnnotationRecord &record) {
  if (!record.assignment) return Status::kPending;
  switch (record.assignment->index()) {
    case 0: return Status::kDirect;
    case 1: return Status::kComposite;
    default: return Status::kUnclassified;
  }
}

AnnotationRecord set_relatedness(AnnotationRecord record, const std::string &annotator,
                                 double score) {
  if (!score_in_range(score)) {
    throw AnnotationError(AnnotationErrorKind::kScoreOutOfRange,
                          "relatedness score must lie in [0, 10]");
  }
  record.relatedness[annotator] = score;
  ++record.version;
  return record;
}

AnnotationRecord set_assignment(AnnotationRecord record, std::optional<Assignment> assignment,
                                const Inventory &inv) {
  record.assignment = std::move(assignment);
  auto violations = validate_record(record, inv);
  if (!violations.empty()) {
    std::string message = "assignment rejected: " + violations.front().message;
    throw AnnotationError(AnnotationErrorKind::kValidationFailed, message,
                          std::move(violations));
  }
  ++record.version;
  return record;
}

Assignment canonicalize_assignment(Assignment assignment, const Inventory &inv) {
  auto fix = [&](RelationLink &link) {
    if (inv.find_relation(link.relation) != nullptr) return;
    auto ref = inv.resolve(link.relation);
    if (!ref) return;
    link.relation = ref->relation->id;
    // An alias names the inverse reading, so flip the stated direction.
    link.direction = link.direction == Direction::kForward ? Direction::kInverse
                                                           : Direction::kForward;
  };
  if (auto *d = std::get_if<DirectAssignment>(&assignment)) fix(d->link);
  if (auto *c = std::get_if<CompositeAssignment>(&assignment)) {
    for (RelationLink &link : c->chain) fix(link);
  }
  return assignment;
}

AnnotationRecord set_review_status(AnnotationRecord record, ReviewStatus status) {
  record.review_status = status;
  ++record.version;
  return record;
}

}  // namespace semrel
