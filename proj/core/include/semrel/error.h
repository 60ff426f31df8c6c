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

#ifndef SEMREL_ERROR_H_
#define SEMREL_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace semrel {

// Base class for all errors raised by the toolkit. Each module derives its
// own error type carrying a kind enum so callers can dispatch without
// parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Kind>
class KindedError : public Error {
 public:
  KindedError(Kind kind, const std::string &message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace semrel

#endif  // SEMREL_ERROR_H_
