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

#include "semrel/inventory.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "text_util.h"

namespace semrel {

std::string_view to_string(Origin origin) {
  return origin == Origin::kDolce ? "dolce" : "custom";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::kImmediate: return "immediate";
    case Branch::kMediated: return "mediated";
    case Branch::kCustom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::kForward ? "forward" : "inverse";
}

std::optional<Origin> parse_origin(std::string_view s) {
  if (s == "dolce") return Origin::kDolce;
  if (s == "custom") return Origin::kCustom;
  return std::nullopt;
}

std::optional<Branch> parse_branch(std::string_view s) {
  if (s == "immediate") return Branch::kImmediate;
  if (s == "mediated") return Branch::kMediated;
  if (s == "custom") return Branch::kCustom;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "forward") return Direction::kForward;
  if (s == "inverse") return Direction::kInverse;
  return std::nullopt;
}

std::string_view to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::kBadIdentifier: return "bad-identifier";
    case ViolationRule::kDuplicateId: return "duplicate-id";
    case ViolationRule::kDanglingReference: return "dangling-reference";
    case ViolationRule::kCycle: return "cycle";
    case ViolationRule::kInverseMismatch: return "inverse-mismatch";
    case ViolationRule::kRootCount: return "root-count";
    case ViolationRule::kHierarchyNarrowing: return "hierarchy-narrowing";
    case ViolationRule::kAliasConflict: return "alias-conflict";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::string_view, 24> kCustomRelations = {
    "common-ownership",    "condition",          "co-occurring-qualifier",
    "coreference",         "correlated-variation", "destination",
    "indirect-ownership",  "indirect-qualifier", "indirect-reference",
    "indirect-result",     "indirect-target",    "instantiation",
    "membership",          "opposition",         "ownership",
    "qualifier",           "represented-in",     "sibling-concept",
    "source",              "specialisation",     "theme-component",
    "used-for",            "value-component",    "affects",
};

constexpr std::array<std::string_view, 28> kDolceRelations = {
    "part",          "part-of",              "participant",
    "patient",       "patient-of",           "target",
    "target-of",     "theme",                "performed-by",
    "performs",      "prescribes",           "instrument",
    "resource",      "references",           "co-participates-with",
    "generic-location", "precedes",          "temporally-coincides",
    "temporally-includes", "temporally-overlaps", "component-of",
    "descriptive-place-of", "product",       "result",
    "use-of",        "unit-of",              "happens-at",
    "involves",
};

// Parent lookup over a possibly broken document: unknown parents end the
// walk, and a visited set stops cycles.
template <typename Entry>
std::map<std::string, const Entry *> index_first(const std::vector<Entry> &v) {
  std::map<std::string, const Entry *> out;
  for (const Entry &e : v) out.emplace(e.id, &e);
  return out;
}

template <typename Entry>
bool reaches(const std::map<std::string, const Entry *> &index,
             const std::string &from, const std::string &to) {
  std::set<std::string> seen;
  std::optional<std::string> cur = from;
  while (cur && seen.insert(*cur).second) {
    if (*cur == to) return true;
    auto it = index.find(*cur);
    if (it == index.end()) return false;
    cur = it->second->parent;
  }
  return false;
}

// Reports each parent cycle once, naming the first member in document
// order.
template <typename Entry>
void find_cycles(const std::vector<Entry> &entries, std::string_view what,
                 std::vector<Violation> *out) {
  auto index = index_first(entries);
  std::set<std::string> reported;
  for (const Entry &e : entries) {
    if (reported.count(e.id)) continue;
    std::vector<std::string> path;
    std::set<std::string> on_path;
    std::optional<std::string> cur = e.id;
    while (cur && !on_path.count(*cur)) {
      on_path.insert(*cur);
      path.push_back(*cur);
      auto it = index.find(*cur);
      if (it == index.end()) {
        cur.reset();
        break;
      }
      cur = it->second->parent;
    }
    if (!cur) continue;
    // `cur` closes a cycle; only report if e itself is on it.
    auto start = std::find(path.begin(), path.end(), *cur);
    bool fresh = true;
    for (auto it = start; it != path.end(); ++it) {
      if (reported.count(*it)) fresh = false;
    }
    if (!fresh) continue;
    std::string chain;
    for (auto it = start; it != path.end(); ++it) {
      reported.insert(*it);
      chain += *it + " -> ";
    }
    chain += *cur;
    out->push_back({ViolationRule::kCycle, *start,
                    std::string(what) + " parent cycle: " + chain});
  }
}

}  // namespace

std::span<const std::string_view> required_custom_relations() {
  return kCustomRelations;
}

std::span<const std::string_view> required_dolce_relations() {
  return kDolceRelations;
}

std::vector<Violation> validate_document(const InventoryDocument &doc) {
  std::vector<Violation> out;
  auto add = [&](ViolationRule rule, const std::string &entity,
                 std::string message) {
    out.push_back({rule, entity, std::move(message)});
  };

  std::set<std::string> class_ids, relation_ids;
  for (const OntoClass &c : doc.classes) {
    if (!text::is_identifier(c.id)) {
      add(ViolationRule::kBadIdentifier, c.id, "class id is not lowercase-hyphenated");
    }
    if (!class_ids.insert(c.id).second) {
      add(ViolationRule::kDuplicateId, c.id, "class id declared twice");
    }
  }
  for (const RelationDef &r : doc.relations) {
    if (!text::is_identifier(r.id)) {
      add(ViolationRule::kBadIdentifier, r.id, "relation id is not lowercase-hyphenated");
    }
    if (!relation_ids.insert(r.id).second) {
      add(ViolationRule::kDuplicateId, r.id, "relation id declared twice");
    }
  }

  for (const OntoClass &c : doc.classes) {
    if (c.parent && !class_ids.count(*c.parent)) {
      add(ViolationRule::kDanglingReference, c.id,
          "parent class '" + *c.parent + "' is not declared");
    }
  }
  std::set<std::string> aliases;
  for (const RelationDef &r : doc.relations) {
    if (!class_ids.count(r.domain)) {
      add(ViolationRule::kDanglingReference, r.id,
          "domain class '" + r.domain + "' is not declared");
    }
    if (!class_ids.count(r.range)) {
      add(ViolationRule::kDanglingReference, r.id,
          "range class '" + r.range + "' is not declared");
    }
    if (r.parent && !relation_ids.count(*r.parent)) {
      add(ViolationRule::kDanglingReference, r.id,
          "parent relation '" + *r.parent + "' is not declared");
    }
    if (r.inverse && !relation_ids.count(*r.inverse)) {
      add(ViolationRule::kDanglingReference, r.id,
          "inverse relation '" + *r.inverse + "' is not declared");
    }
    if (r.inverse_alias) {
      if (r.inverse) {
        add(ViolationRule::kAliasConflict, r.id,
            "relation declares both an inverse and an inverse alias");
      }
      if (relation_ids.count(*r.inverse_alias) ||
          !aliases.insert(*r.inverse_alias).second) {
        add(ViolationRule::kAliasConflict, r.id,
            "inverse alias '" + *r.inverse_alias + "' is already a relation or alias");
      }
    }
  }

  find_cycles(doc.classes, "class", &out);
  find_cycles(doc.relations, "relation", &out);

  auto relations = index_first(doc.relations);
  auto classes = index_first(doc.classes);
  for (const RelationDef &r : doc.relations) {
    if (!r.inverse) continue;
    auto it = relations.find(*r.inverse);
    if (it == relations.end()) continue;
    const RelationDef &s = *it->second;
    if (s.inverse != r.id) {
      add(ViolationRule::kInverseMismatch, r.id,
          "inverse '" + s.id + "' does not name '" + r.id + "' back");
    } else if (r.domain != s.range || r.range != s.domain) {
      add(ViolationRule::kInverseMismatch, r.id,
          "signature (" + r.domain + ", " + r.range + ") is not the swap of '" +
              s.id + "' (" + s.domain + ", " + s.range + ")");
    }
  }

  std::vector<std::string> roots;
  for (const OntoClass &c : doc.classes) {
    if (!c.parent) roots.push_back(c.id);
  }
  if (roots.size() != 1) {
    add(ViolationRule::kRootCount, roots.empty() ? "" : roots.front(),
        "expected exactly one root class, found " + std::to_string(roots.size()));
  } else if (roots.front() != "particular") {
    add(ViolationRule::kRootCount, roots.front(),
        "the root class must be 'particular'");
  }

  for (const RelationDef &r : doc.relations) {
    if (!r.parent) continue;
    auto it = relations.find(*r.parent);
    if (it == relations.end()) continue;
    const RelationDef &p = *it->second;
    if (!reaches(classes, r.domain, p.domain)) {
      add(ViolationRule::kHierarchyNarrowing, r.id,
          "domain '" + r.domain + "' is not subsumed by parent '" + p.id +
              "' domain '" + p.domain + "'");
    }
    if (!reaches(classes, r.range, p.range)) {
      add(ViolationRule::kHierarchyNarrowing, r.id,
          "range '" + r.range + "' is not subsumed by parent '" + p.id +
              "' range '" + p.range + "'");
    }
  }
  return out;
}

std::vector<Violation> validate_inventory(const Inventory &inv) {
  return validate_document(inv.document());
}

Inventory Inventory::build(InventoryDocument doc) {
  for (const Violation &v : validate_document(doc)) {
    switch (v.rule) {
      case ViolationRule::kDuplicateId:
      case ViolationRule::kAliasConflict:
        throw InventoryError(InventoryErrorKind::kDuplicateId,
                             v.entity + ": " + v.message);
      case ViolationRule::kDanglingReference:
        throw InventoryError(InventoryErrorKind::kDanglingReference,
                             v.entity + ": " + v.message);
      case ViolationRule::kCycle:
        throw InventoryError(InventoryErrorKind::kCycle, v.entity + ": " + v.message);
      case ViolationRule::kInverseMismatch:
        throw InventoryError(InventoryErrorKind::kInverseMismatch,
                             v.entity + ": " + v.message);
      default:
        break;
    }
  }

  Inventory inv;
  inv.doc_ = std::move(doc);
  const auto &classes = inv.doc_.classes;
  const auto &relations = inv.doc_.relations;
  for (size_t i = 0; i < classes.size(); ++i) inv.class_by_id_[classes[i].id] = i;
  for (size_t i = 0; i < relations.size(); ++i) {
    inv.relation_by_id_[relations[i].id] = i;
    if (relations[i].inverse_alias) {
      inv.relation_by_alias_[*relations[i].inverse_alias] = i;
    }
  }

  const size_t n = classes.size();
  inv.class_parent_.resize(n);
  std::vector<std::vector<size_t>> children(n);
  std::vector<size_t> roots;
  for (size_t i = 0; i < n; ++i) {
    if (classes[i].parent) {
      size_t p = inv.class_by_id_.at(*classes[i].parent);
      inv.class_parent_[i] = p;
      children[p].push_back(i);
    } else {
      roots.push_back(i);
    }
  }

  inv.depth_.assign(n, 0);
  inv.enter_.assign(n, 0);
  inv.exit_.assign(n, 0);
  int clock = 0;
  for (size_t root : roots) {
    // Iterative DFS: (node, next child position).
    std::vector<std::pair<size_t, size_t>> stack{{root, 0}};
    inv.enter_[root] = clock++;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      if (next < children[node].size()) {
        size_t child = children[node][next++];
        inv.depth_[child] = inv.depth_[node] + 1;
        inv.enter_[child] = clock++;
        stack.push_back({child, 0});
      } else {
        inv.exit_[node] = clock++;
        stack.pop_back();
      }
    }
  }

  inv.relations_by_domain_.resize(n);
  for (size_t i = 0; i < relations.size(); ++i) {
    inv.relations_by_domain_[inv.class_by_id_.at(relations[i].domain)].push_back(i);
  }
  return inv;
}

const OntoClass *Inventory::find_class(std::string_view id) const {
  auto it = class_by_id_.find(std::string(id));
  return it == class_by_id_.end() ? nullptr : &doc_.classes[it->second];
}

const RelationDef *Inventory::find_relation(std::string_view id) const {
  auto it = relation_by_id_.find(std::string(id));
  return it == relation_by_id_.end() ? nullptr : &doc_.relations[it->second];
}

const OntoClass &Inventory::get_class(std::string_view id) const {
  return doc_.classes[class_index(id)];
}

const RelationDef &Inventory::get_relation(std::string_view id) const {
  const RelationDef *r = find_relation(id);
  if (r == nullptr) {
    throw InventoryError(InventoryErrorKind::kUnknownId,
                         "unknown relation '" + std::string(id) + "'");
  }
  return *r;
}

size_t Inventory::class_index(std::string_view id) const {
  auto it = class_by_id_.find(std::string(id));
  if (it == class_by_id_.end()) {
    throw InventoryError(InventoryErrorKind::kUnknownId,
                         "unknown class '" + std::string(id) + "'");
  }
  return it->second;
}

bool Inventory::is_subclass(std::string_view cls, std::string_view ancestor) const {
  size_t c = class_index(cls);
  size_t a = class_index(ancestor);
  return subsumes(a, c);
}

int Inventory::depth(std::string_view cls) const { return depth_[class_index(cls)]; }

std::optional<std::string> Inventory::inverse_of(std::string_view relation) const {
  return get_relation(relation).inverse;
}

std::optional<RelationRef> Inventory::resolve(std::string_view name) const {
  if (const RelationDef *r = find_relation(name)) {
    return RelationRef{r, Direction::kForward};
  }
  auto it = relation_by_alias_.find(std::string(name));
  if (it != relation_by_alias_.end()) {
    return RelationRef{&doc_.relations[it->second], Direction::kInverse};
  }
  return std::nullopt;
}

bool Inventory::admits(const RelationDef &relation, Direction direction,
                       std::string_view source_class,
                       std::string_view target_class) const {
  size_t domain = class_index(relation.domain);
  size_t range = class_index(relation.range);
  size_t source = class_index(source_class);
  size_t target = class_index(target_class);
  if (direction == Direction::kForward) {
    return subsumes(domain, source) && subsumes(range, target);
  }
  return relation.has_inverse_reading() && subsumes(domain, target) &&
         subsumes(range, source);
}

std::vector<Candidate> Inventory::candidate_relations(std::string_view class_a,
                                                      std::string_view class_b,
                                                      bool try_both_orders) const {
  const size_t a = class_index(class_a);
  const size_t b = class_index(class_b);

  struct Hit {
    int specificity;
    size_t relation;
    Direction direction;
  };
  std::vector<Hit> hits;
  auto specificity = [&](const RelationDef &r) {
    return depth_[class_by_id_.at(r.domain)] + depth_[class_by_id_.at(r.range)];
  };

  // Every relation whose domain is an ancestor of `first` and whose range
  // subsumes `second`.
  auto collect = [&](size_t first, size_t second, Direction direction) {
    for (std::optional<size_t> c = first; c; c = class_parent_[*c]) {
      for (size_t ri : relations_by_domain_[*c]) {
        const RelationDef &r = doc_.relations[ri];
        if (direction == Direction::kInverse && !r.has_inverse_reading()) continue;
        if (subsumes(class_by_id_.at(r.range), second)) {
          hits.push_back({specificity(r), ri, direction});
        }
      }
    }
  };
  collect(a, b, Direction::kForward);
  if (try_both_orders) collect(b, a, Direction::kInverse);

  std::sort(hits.begin(), hits.end(), [&](const Hit &x, const Hit &y) {
    if (x.specificity != y.specificity) return x.specificity > y.specificity;
    const std::string &xi = doc_.relations[x.relation].id;
    const std::string &yi = doc_.relations[y.relation].id;
    if (xi != yi) return xi < yi;
    return x.direction < y.direction;
  });
  std::vector<Candidate> out;
  out.reserve(hits.size());
  for (size_t i = 0; i < hits.size(); ++i) {
    const Hit &h = hits[i];
    const RelationDef &r = doc_.relations[h.relation];
    // A symmetric relation read backwards says the same thing as forwards.
    if (h.direction == Direction::kInverse && r.inverse == r.id && i > 0 &&
        hits[i - 1].relation == h.relation) {
      continue;
    }
    out.push_back({r.id, h.direction});
  }
  return out;
}

Inventory load_inventory(std::string_view text) {
  return Inventory::build(parse_inventory(text));
}

Inventory load_inventory_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InventoryError(InventoryErrorKind::kParse, "cannot open inventory file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_inventory(buffer.str());
}

std::vector<std::string> check_seed_coverage(const Inventory &inv) {
  std::vector<std::string> problems;
  std::set<std::string_view> required_custom(kCustomRelations.begin(),
                                             kCustomRelations.end());
  for (std::string_view id : kCustomRelations) {
    const RelationDef *r = inv.find_relation(id);
    if (r == nullptr) {
      problems.push_back("missing custom relation '" + std::string(id) + "'");
    } else if (r->origin != Origin::kCustom) {
      problems.push_back("relation '" + std::string(id) + "' must have origin custom");
    }
  }
  for (std::string_view id : kDolceRelations) {
    const RelationDef *r = inv.find_relation(id);
    if (r == nullptr) {
      problems.push_back("missing DOLCE relation '" + std::string(id) + "'");
    } else if (r->origin != Origin::kDolce) {
      problems.push_back("relation '" + std::string(id) + "' must have origin dolce");
    }
  }
  for (const RelationDef &r : inv.relations()) {
    if (r.origin == Origin::kCustom && !required_custom.count(r.id)) {
      problems.push_back("unexpected custom relation '" + r.id + "'");
    }
  }
  return problems;
}

}  // namespace semrel
