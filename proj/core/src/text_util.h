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

#ifndef SEMREL_TEXT_UTIL_H_
#define SEMREL_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace semrel::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Lowercase ASCII letters, digits and single interior hyphens.
bool is_identifier(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

// Splits `text` into lines, keeping 1-based line numbers. A trailing '\r' is
// dropped so files with CRLF endings parse the same way.
struct Line {
  int number;
  std::string_view text;
};
std::vector<Line> lines(std::string_view text);

// Removes a '#' comment that starts the (trimmed) line. Inline '#' is kept,
// since descriptions may legitimately contain it.
bool is_blank_or_comment(std::string_view line);

// "key = value" with surrounding whitespace removed. Returns false when the
// line has no '='.
bool split_assignment(std::string_view line, std::string_view *key,
                      std::string_view *value);

// Natural ordering: runs of digits compare numerically.
bool natural_less(std::string_view a, std::string_view b);

}  // namespace semrel::text

#endif  // SEMREL_TEXT_UTIL_H_
