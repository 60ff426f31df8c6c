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

#include "semrel/record_codec.h"

#include "json_codec.h"

namespace semrel {
namespace json_codec {
namespace {

[[noreturn]] void schema_error(const std::string &message) {
  throw CodecError(CodecErrorKind::kSchema, message);
}

const Json &field(const Json &j, const char *key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json &j, const char *key) {
  const Json &v = field(j, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

template <typename T>
Json optional_json(const std::optional<T> &v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const ConceptMention &m) {
  Json j;
  j["term"] = m.term;
  j["sentence"] = m.sentence;
  j["span"] = m.span ? Json::array({m.span->start, m.span->end}) : Json(nullptr);
  j["class"] = optional_json(m.assigned_class);
  j["sense"] = optional_json(m.sense_id);
  return j;
}

Json to_json(const RelationLink &link) {
  Json j;
  j["source"] = to_json(link.source);
  j["relation"] = link.relation;
  j["direction"] = std::string(to_string(link.direction));
  j["target"] = to_json(link.target);
  return j;
}

Json to_json(const Assignment &assignment) {
  Json j;
  if (const auto *d = std::get_if<DirectAssignment>(&assignment)) {
    j["kind"] = "direct";
    j["link"] = to_json(d->link);
    j["override"] = d->override_signature;
    j["justification"] = d->justification;
  } else if (const auto *c = std::get_if<CompositeAssignment>(&assignment)) {
    j["kind"] = "composite";
    Json chain = Json::array();
    for (const RelationLink &link : c->chain) chain.push_back(to_json(link));
    j["chain"] = std::move(chain);
  } else {
    j["kind"] = "unclassified";
    j["reason"] = std::string(to_string(std::get<UnclassifiedAssignment>(assignment).reason));
  }
  return j;
}

Json to_json(const AnnotationRecord &r) {
  Json j;
  j["id"] = r.id;
  j["sentence"] = r.sentence;
  j["pair"] = Json::array({to_json(r.first), to_json(r.second)});
  j["assignment"] = r.assignment ? to_json(*r.assignment) : Json(nullptr);
  Json scores = Json::object();
  for (const auto &[annotator, score] : r.relatedness) scores[annotator] = score;
  j["relatedness"] = std::move(scores);
  j["review_status"] = std::string(to_string(r.review_status));
  j["version"] = r.version;
  j["created_at"] = r.created_at;
  j["updated_at"] = r.updated_at;
  j["mutation"] = r.mutation_token;
  return j;
}

Json to_json(const AnnotationViolation &v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["link"] = v.link;
  j["message"] = v.message;
  return j;
}

Json to_json(const std::vector<AnnotationViolation> &violations) {
  Json j = Json::array();
  for (const auto &v : violations) j.push_back(to_json(v));
  return j;
}

Json to_json(const Violation &v) {
  Json j;
  j["rule"] = std::string(to_string(v.rule));
  j["entity"] = v.entity;
  j["message"] = v.message;
  return j;
}

Json to_json(const OntoClass &c) {
  Json j;
  j["id"] = c.id;
  j["label"] = c.label;
  j["parent"] = optional_json(c.parent);
  j["note"] = c.note;
  return j;
}

Json to_json(const RelationDef &r) {
  Json j;
  j["id"] = r.id;
  j["label"] = r.label;
  j["origin"] = std::string(to_string(r.origin));
  j["branch"] = std::string(to_string(r.branch));
  j["parent"] = optional_json(r.parent);
  j["domain"] = r.domain;
  j["range"] = r.range;
  j["inverse"] = optional_json(r.inverse);
  j["inverse_alias"] = optional_json(r.inverse_alias);
  j["description"] = r.description;
  j["example"] = r.example;
  return j;
}

Json to_json(const InventoryDocument &doc) {
  Json j;
  j["version"] = doc.version;
  Json classes = Json::array();
  for (const OntoClass &c : doc.classes) classes.push_back(to_json(c));
  Json relations = Json::array();
  for (const RelationDef &r : doc.relations) relations.push_back(to_json(r));
  j["classes"] = std::move(classes);
  j["relations"] = std::move(relations);
  return j;
}

Json to_json(const Sentence &s) {
  Json j;
  j["id"] = s.id;
  j["source"] = s.source;
  j["offset"] = s.offset;
  j["text"] = s.text;
  Json tokens = Json::array();
  for (const Token &t : s.tokens) tokens.push_back(Json::array({t.surface, t.start, t.end}));
  j["tokens"] = std::move(tokens);
  return j;
}

Json to_json(const PairCandidate &c) {
  Json j;
  j["sentence"] = c.sentence;
  j["first_term"] = c.first_term;
  j["surface"] = c.surface;
  j["seed"] = c.sampled_with_seed;
  return j;
}

Json to_json(const std::vector<Candidate> &candidates) {
  Json j = Json::array();
  for (const Candidate &c : candidates) {
    j.push_back({{"relation", c.relation}, {"direction", std::string(to_string(c.direction))}});
  }
  return j;
}

ConceptMention mention_from_json(const Json &j) {
  ConceptMention m;
  m.term = string_field(j, "term");
  m.sentence = string_field(j, "sentence");
  auto span = j.find("span");
  if (span != j.end() && !span->is_null()) {
    if (!span->is_array() || span->size() != 2 || !(*span)[0].is_number_unsigned() ||
        !(*span)[1].is_number_unsigned()) {
      schema_error("'span' must be [start, end] with non-negative integers");
    }
    m.span = CharSpan{(*span)[0].get<size_t>(), (*span)[1].get<size_t>()};
  }
  m.assigned_class = optional_string(j, "class");
  m.sense_id = optional_string(j, "sense");
  return m;
}

RelationLink link_from_json(const Json &j) {
  RelationLink link;
  link.source = mention_from_json(field(j, "source"));
  link.target = mention_from_json(field(j, "target"));
  link.relation = string_field(j, "relation");
  std::string direction = optional_string(j, "direction").value_or("forward");
  auto d = parse_direction(direction);
  if (!d) schema_error("bad direction '" + direction + "'");
  link.direction = *d;
  return link;
}

Assignment assignment_from_json(const Json &j) {
  std::string kind = string_field(j, "kind");
  if (kind == "direct") {
    DirectAssignment d;
    d.link = link_from_json(field(j, "link"));
    auto ov = j.find("override");
    if (ov != j.end()) {
      if (!ov->is_boolean()) schema_error("'override' must be a boolean");
      d.override_signature = ov->get<bool>();
    }
    d.justification = optional_string(j, "justification").value_or("");
    return d;
  }
  if (kind == "composite") {
    const Json &chain = field(j, "chain");
    if (!chain.is_array()) schema_error("'chain' must be an array");
    CompositeAssignment c;
    for (const Json &link : chain) c.chain.push_back(link_from_json(link));
    return c;
  }
  if (kind == "unclassified") {
    std::string reason = string_field(j, "reason");
    auto r = parse_unclassified_reason(reason);
    if (!r) schema_error("bad unclassified reason '" + reason + "'");
    return UnclassifiedAssignment{*r};
  }
  schema_error("bad assignment kind '" + kind + "'");
}

AnnotationRecord record_from_json(const Json &j) {
  AnnotationRecord r;
  r.id = string_field(j, "id");
  r.sentence = string_field(j, "sentence");
  const Json &pair = field(j, "pair");
  if (!pair.is_array() || pair.size() != 2) schema_error("'pair' must hold two concepts");
  r.first = mention_from_json(pair[0]);
  r.second = mention_from_json(pair[1]);
  auto a = j.find("assignment");
  if (a != j.end() && !a->is_null()) r.assignment = assignment_from_json(*a);
  auto scores = j.find("relatedness");
  if (scores != j.end() && !scores->is_null()) {
    if (!scores->is_object()) schema_error("'relatedness' must be an object");
    for (const auto &[annotator, score] : scores->items()) {
      if (!score.is_number()) schema_error("relatedness scores must be numbers");
      r.relatedness[annotator] = score.get<double>();
    }
  }
  std::string status = optional_string(j, "review_status").value_or("draft");
  auto s = parse_review_status(status);
  if (!s) schema_error("bad review_status '" + status + "'");
  r.review_status = *s;
  auto version = j.find("version");
  if (version != j.end()) {
    if (!version->is_number_unsigned()) schema_error("'version' must be a positive integer");
    r.version = version->get<uint64_t>();
  }
  r.created_at = optional_string(j, "created_at").value_or("");
  r.updated_at = optional_string(j, "updated_at").value_or("");
  r.mutation_token = optional_string(j, "mutation").value_or("");
  return r;
}

}  // namespace json_codec

namespace {

json_codec::Json parse(std::string_view text) {
  try {
    return json_codec::Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw CodecError(CodecErrorKind::kSyntax, e.what());
  }
}

}  // namespace

std::string record_to_json(const AnnotationRecord &record) {
  return json_codec::to_json(record).dump();
}

AnnotationRecord record_from_json(std::string_view json) {
  return json_codec::record_from_json(parse(json));
}

std::string assignment_to_json(const Assignment &assignment) {
  return json_codec::to_json(assignment).dump();
}

Assignment assignment_from_json(std::string_view json) {
  return json_codec::assignment_from_json(parse(json));
}

std::string export_dataset(const std::vector<AnnotationRecord> &records,
                           const std::string &inventory_version) {
  json_codec::Json doc;
  doc["inventory_version"] = inventory_version;
  doc["record_count"] = records.size();
  json_codec::Json list = json_codec::Json::array();
  for (const AnnotationRecord &r : records) list.push_back(json_codec::to_json(r));
  doc["records"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace semrel
