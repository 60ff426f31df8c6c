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


#ifndef SEMREL_REPORT_H_
#define SEMREL_REPORT_H_

#include <string>

#include "semrel/inventory.h"
#include "semrel/stats.h"

namespace semrel {

// Aligned plain-text tables. Percentages and means print with 2 decimals.
std::string render_text(const ClassificationSummary &summary);
std::string render_text(const RelationFrequencyReport &report);
std::string render_text(const ChainLengthStats &stats);
// With an inventory, relation rows are annotated with their origin.
std::string render_text(const RelatednessByRelation &report, const Inventory *inv = nullptr);

// Structured documents, pretty-printed JSON.
std::string render_json(const ClassificationSummary &summary);
std::string render_json(const RelationFrequencyReport &report);
std::string render_json(const ChainLengthStats &stats);
std::string render_json(const RelatednessByRelation &report);

}  // namespace semrel

#endif  // SEMREL_REPORT_H_
