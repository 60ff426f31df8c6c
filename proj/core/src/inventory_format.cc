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

// Inventory text format:
//
//   version = <string>
//
//   [classes]
//   <class-id>:
//     label = ...
//     parent = <class-id>
//     note = ...
//
//   [relations]
//   <relation-id>:
//     label = ...
//     origin = dolce | custom
//     branch = immediate | mediated | custom
//     parent = <relation-id>
//     domain = <class-id>
//     range = <class-id>
//     inverse = <relation-id>
//     inverse-alias = <name>
//     description = ...
//     example = ...
//
// Lines whose first non-blank character is '#' are comments. Entry headers
// start in column 0; fields are indented.

#include <map>
#include <set>
#include <sstream>

#include "semrel/inventory.h"
#include "text_util.h"

namespace semrel {
namespace {

enum class Section { kNone, kClasses, kRelations };

[[noreturn]] void fail(int line, const std::string &message) {
  throw InventoryError(InventoryErrorKind::kParse,
                       "inventory line " + std::to_string(line) + ": " + message);
}

struct RawEntry {
  int line = 0;
  std::string id;
  std::map<std::string, std::string> fields;
};

std::optional<std::string> take(RawEntry &e, const std::string &key) {
  auto it = e.fields.find(key);
  if (it == e.fields.end()) return std::nullopt;
  std::string v = it->second;
  e.fields.erase(it);
  return v;
}

std::string require(RawEntry &e, const std::string &key) {
  auto v = take(e, key);
  if (!v || v->empty()) fail(e.line, "'" + e.id + "' is missing field '" + key + "'");
  return *v;
}

OntoClass to_class(RawEntry e) {
  OntoClass c;
  c.id = e.id;
  c.label = take(e, "label").value_or(e.id);
  c.parent = take(e, "parent");
  c.note = take(e, "note").value_or("");
  if (!e.fields.empty()) {
    fail(e.line, "class '" + e.id + "' has unknown field '" + e.fields.begin()->first + "'");
  }
  return c;
}

RelationDef to_relation(RawEntry e) {
  RelationDef r;
  r.id = e.id;
  r.label = take(e, "label").value_or(e.id);
  std::string origin = require(e, "origin");
  auto o = parse_origin(origin);
  if (!o) fail(e.line, "'" + e.id + "': bad origin '" + origin + "'");
  r.origin = *o;
  std::string branch = require(e, "branch");
  auto b = parse_branch(branch);
  if (!b) fail(e.line, "'" + e.id + "': bad branch '" + branch + "'");
  r.branch = *b;
  r.parent = take(e, "parent");
  r.domain = require(e, "domain");
  r.range = require(e, "range");
  r.inverse = take(e, "inverse");
  r.inverse_alias = take(e, "inverse-alias");
  r.description = take(e, "description").value_or("");
  r.example = take(e, "example").value_or("");
  if (!e.fields.empty()) {
    fail(e.line,
         "relation '" + e.id + "' has unknown field '" + e.fields.begin()->first + "'");
  }
  return r;
}

}  // namespace

InventoryDocument parse_inventory(std::string_view text) {
  InventoryDocument doc;
  Section section = Section::kNone;
  std::optional<RawEntry> entry;
  bool saw_version = false;

  auto flush = [&]() {
    if (!entry) return;
    if (section == Section::kClasses) {
      doc.classes.push_back(to_class(std::move(*entry)));
    } else {
      doc.relations.push_back(to_relation(std::move(*entry)));
    }
    entry.reset();
  };

  for (const text::Line &line : text::lines(text)) {
    if (text::is_blank_or_comment(line.text)) continue;
    std::string_view t = text::trim(line.text);
    bool indented = line.text.front() == ' ' || line.text.front() == '\t';

    if (!indented && t.front() == '[') {
      flush();
      if (t == "[classes]") {
        section = Section::kClasses;
      } else if (t == "[relations]") {
        section = Section::kRelations;
      } else {
        fail(line.number, "unknown section " + std::string(t));
      }
      continue;
    }

    std::string_view key, value;
    if (!indented && section == Section::kNone) {
      if (!text::split_assignment(t, &key, &value) || key != "version") {
        fail(line.number, "expected 'version = ...' or a section header");
      }
      if (saw_version) fail(line.number, "version declared twice");
      doc.version = std::string(value);
      saw_version = true;
      continue;
    }
    if (section == Section::kNone) fail(line.number, "field outside of any section");

    if (!indented) {
      if (t.back() != ':') fail(line.number, "expected '<id>:' entry header");
      flush();
      std::string_view id = text::trim(t.substr(0, t.size() - 1));
      if (!text::is_identifier(id)) {
        fail(line.number, "'" + std::string(id) + "' is not a lowercase-hyphenated identifier");
      }
      entry = RawEntry{line.number, std::string(id), {}};
      continue;
    }

    if (!entry) fail(line.number, "field before any entry header");
    if (!text::split_assignment(t, &key, &value)) {
      fail(line.number, "expected 'key = value'");
    }
    if (!entry->fields.emplace(std::string(key), std::string(value)).second) {
      fail(line.number, "field '" + std::string(key) + "' repeated");
    }
  }
  flush();
  if (!saw_version) fail(1, "missing 'version = ...'");
  return doc;
}

std::string format_inventory(const InventoryDocument &doc) {
  std::ostringstream out;
  out << "version = " << doc.version << "\n\n[classes]\n";
  for (const OntoClass &c : doc.classes) {
    out << "\n" << c.id << ":\n";
    if (c.label != c.id) out << "  label = " << c.label << "\n";
    if (c.parent) out << "  parent = " << *c.parent << "\n";
    if (!c.note.empty()) out << "  note = " << c.note << "\n";
  }
  out << "\n[relations]\n";
  for (const RelationDef &r : doc.relations) {
    out << "\n" << r.id << ":\n";
    if (r.label != r.id) out << "  label = " << r.label << "\n";
    out << "  origin = " << to_string(r.origin) << "\n";
    out << "  branch = " << to_string(r.branch) << "\n";
    if (r.parent) out << "  parent = " << *r.parent << "\n";
    out << "  domain = " << r.domain << "\n";
    out << "  range = " << r.range << "\n";
    if (r.inverse) out << "  inverse = " << *r.inverse << "\n";
    if (r.inverse_alias) out << "  inverse-alias = " << *r.inverse_alias << "\n";
    if (!r.description.empty()) out << "  description = " << r.description << "\n";
    if (!r.example.empty()) out << "  example = " << r.example << "\n";
  }
  return out.str();
}

}  // namespace semrel
