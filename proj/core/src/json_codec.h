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

#ifndef SEMREL_JSON_CODEC_H_
#define SEMREL_JSON_CODEC_H_

// nlohmann::json bindings shared by the record codec, the store and the
// HTTP service. Not installed.

#include "json.hpp"
#include "semrel/alignment.h"
#include "semrel/annotation.h"
#include "semrel/corpus.h"
#include "semrel/inventory.h"
#include "semrel/stats.h"

namespace semrel::json_codec {

using Json = nlohmann::ordered_json;

Json to_json(const ConceptMention &m);
Json to_json(const RelationLink &link);
Json to_json(const Assignment &assignment);
Json to_json(const AnnotationRecord &record);
Json to_json(const AnnotationViolation &v);
Json to_json(const std::vector<AnnotationViolation> &violations);
Json to_json(const Violation &v);
Json to_json(const InventoryDocument &doc);
Json to_json(const OntoClass &c);
Json to_json(const RelationDef &r);
Json to_json(const Sentence &s);
Json to_json(const PairCandidate &c);
Json to_json(const std::vector<Candidate> &candidates);
Json to_json(const ClassificationSummary &summary);
Json to_json(const RelationFrequencyReport &report);
Json to_json(const ChainLengthStats &stats);
Json to_json(const RelatednessByRelation &report);

// Throw CodecError(kSchema) naming the offending field.
ConceptMention mention_from_json(const Json &j);
RelationLink link_from_json(const Json &j);
Assignment assignment_from_json(const Json &j);
AnnotationRecord record_from_json(const Json &j);

}  // namespace semrel::json_codec

#endif  // SEMREL_JSON_CODEC_H_
