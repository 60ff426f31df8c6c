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

#ifndef SEMREL_INVENTORY_H_
#define SEMREL_INVENTORY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semrel/error.h"

namespace semrel {

enum class Origin { kDolce, kCustom };
enum class Branch { kImmediate, kMediated, kCustom };
enum class Direction { kForward, kInverse };

std::string_view to_string(Origin origin);
std::string_view to_string(Branch branch);
std::string_view to_string(Direction direction);
std::optional<Origin> parse_origin(std::string_view s);
std::optional<Branch> parse_branch(std::string_view s);
std::optional<Direction> parse_direction(std::string_view s);

// A node of the class forest used for subsumption checks.
struct OntoClass {
  std::string id;
  std::string label;
  std::optional<std::string> parent;
  std::string note;

  friend bool operator==(const OntoClass &, const OntoClass &) = default;
};

// A typed binary relation. `inverse` may name the relation itself, which
// makes it symmetric. `inverse_alias` names the inverse reading of a
// relation that has no inverse entry of its own (e.g. "used-in" for
// "used-for"); links may then be written in the inverse direction.
struct RelationDef {
  std::string id;
  std::string label;
  Origin origin = Origin::kCustom;
  Branch branch = Branch::kCustom;
  std::optional<std::string> parent;
  std::string domain;
  std::string range;
  std::optional<std::string> inverse;
  std::optional<std::string> inverse_alias;
  std::string description;
  std::string example;

  bool has_inverse_reading() const {
    return inverse.has_value() || inverse_alias.has_value();
  }

  friend bool operator==(const RelationDef &, const RelationDef &) = default;
};

// Raw, unchecked content of an inventory file.
struct InventoryDocument {
  std::string version;
  std::vector<OntoClass> classes;
  std::vector<RelationDef> relations;
};

enum class InventoryErrorKind {
  kParse,
  kDanglingReference,
  kInverseMismatch,
  kCycle,
  kDuplicateId,
  kUnknownId,
};

using InventoryError = KindedError<InventoryErrorKind>;

enum class ViolationRule {
  kBadIdentifier,
  kDuplicateId,
  kDanglingReference,
  kCycle,
  kInverseMismatch,
  kRootCount,
  kHierarchyNarrowing,
  kAliasConflict,
};

std::string_view to_string(ViolationRule rule);

// One broken invariant. `entity` is the class or relation id at fault.
struct Violation {
  ViolationRule rule;
  std::string entity;
  std::string message;
};

struct Candidate {
  std::string relation;
  Direction direction;

  friend bool operator==(const Candidate &, const Candidate &) = default;
  friend auto operator<=>(const Candidate &, const Candidate &) = default;
};

// A relation name resolved against the inventory, following inverse aliases.
struct RelationRef {
  const RelationDef *relation;
  Direction direction;
};

// Immutable, indexed inventory. Construction rejects the structural
// violations that would make queries ill-defined (duplicates, dangling
// references, cycles, inverse mismatches); softer rules are reported by
// validate_inventory().
class Inventory {
 public:
  static Inventory build(InventoryDocument doc);

  const std::string &version() const { return doc_.version; }
  const InventoryDocument &document() const { return doc_; }
  std::span<const OntoClass> classes() const { return doc_.classes; }
  std::span<const RelationDef> relations() const { return doc_.relations; }

  const OntoClass *find_class(std::string_view id) const;
  const RelationDef *find_relation(std::string_view id) const;
  // Throw InventoryError(kUnknownId) when absent.
  const OntoClass &get_class(std::string_view id) const;
  const RelationDef &get_relation(std::string_view id) const;

  // True iff `ancestor` is reachable from `cls` over zero or more parent
  // edges.
  bool is_subclass(std::string_view cls, std::string_view ancestor) const;

  // Number of parent edges between the class and its root.
  int depth(std::string_view cls) const;

  std::optional<std::string> inverse_of(std::string_view relation) const;

  // Accepts a relation id or an inverse alias.
  std::optional<RelationRef> resolve(std::string_view name) const;

  // Relations whose signature admits (class_a, class_b). With
  // `try_both_orders`, relations with an inverse reading that admit
  // (class_b, class_a) are added with Direction::kInverse. Ordered
  // most-specific signature first, then by relation id, forward before
  // inverse. A symmetric relation matching in both orders is listed once,
  // forward.
  std::vector<Candidate> candidate_relations(std::string_view class_a,
                                             std::string_view class_b,
                                             bool try_both_orders) const;

  // True iff `relation` read in `direction` admits (source, target).
  bool admits(const RelationDef &relation, Direction direction,
              std::string_view source_class,
              std::string_view target_class) const;

 private:
  Inventory() = default;

  size_t class_index(std::string_view id) const;
  bool subsumes(size_t ancestor, size_t cls) const {
    return enter_[ancestor] <= enter_[cls] && exit_[cls] <= exit_[ancestor];
  }

  InventoryDocument doc_;
  std::unordered_map<std::string, size_t> class_by_id_;
  std::unordered_map<std::string, size_t> relation_by_id_;
  std::unordered_map<std::string, size_t> relation_by_alias_;
  std::vector<std::optional<size_t>> class_parent_;
  std::vector<int> depth_;
  // Pre-order entry/exit stamps; a subsumes c iff c's interval nests in a's.
  std::vector<int> enter_;
  std::vector<int> exit_;
  std::vector<std::vector<size_t>> relations_by_domain_;
};

// Parses the inventory text format. Throws InventoryError(kParse) with a
// line number on malformed input.
InventoryDocument parse_inventory(std::string_view text);
std::string format_inventory(const InventoryDocument &doc);

// parse_inventory + Inventory::build.
Inventory load_inventory(std::string_view text);
Inventory load_inventory_file(const std::string &path);

std::vector<Violation> validate_document(const InventoryDocument &doc);
std::vector<Violation> validate_inventory(const Inventory &inv);

// Relation ids the shipped seed must carry.
std::span<const std::string_view> required_custom_relations();
std::span<const std::string_view> required_dolce_relations();

// Coverage of the required relation lists: missing ids, custom relations
// beyond the required 24, and origin mismatches.
std::vector<std::string> check_seed_coverage(const Inventory &inv);

}  // namespace semrel

#endif  // SEMREL_INVENTORY_H_
