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

#ifndef SEMREL_RECORD_CODEC_H_
#define SEMREL_RECORD_CODEC_H_

#include <string>
#include <string_view>
#include <vector>

#include "semrel/annotation.h"
#include "semrel/error.h"

namespace semrel {

enum class CodecErrorKind { kSyntax, kSchema };
using CodecError = KindedError<CodecErrorKind>;

// Single-line JSON object. Keys are emitted in a fixed order, so equal
// records encode to identical bytes.
std::string record_to_json(const AnnotationRecord &record);
AnnotationRecord record_from_json(std::string_view json);

std::string assignment_to_json(const Assignment &assignment);
Assignment assignment_from_json(std::string_view json);

// Whole-dataset document: {"inventory_version": ..., "records": [...]}.
std::string export_dataset(const std::vector<AnnotationRecord> &records,
                           const std::string &inventory_version);

}  // namespace semrel

#endif  // SEMREL_RECORD_CODEC_H_
