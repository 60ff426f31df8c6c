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


#ifndef SEMREL_SERVICE_H_
#define SEMREL_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semrel/annotation.h"
#include "semrel/error.h"
#include "semrel/inventory.h"
#include "semrel/record_store.h"

namespace semrel {

struct ServiceConfig {
  // host:port; port 0 binds an ephemeral port.
  std::string listen = "127.0.0.1:8080";
  std::filesystem::path corpus;
  std::filesystem::path inventory;
  std::filesystem::path alignment;
  std::filesystem::path store;
  uint64_t seed = 42;
};

enum class ConfigErrorKind { kBadValue, kUnresolvedPath };
using ConfigError = KindedError<ConfigErrorKind>;

struct ListenAddress {
  std::string host;
  int port = 0;
};

// Throws ConfigError(kBadValue).
ListenAddress parse_listen(const std::string &listen);

// Every input path must exist and the store's directory must be writable.
// Throws ConfigError(kUnresolvedPath) naming all offending fields.
void check_config(const ServiceConfig &config);

enum class ApiErrorCode { kNotFound, kConflict, kValidationFailed, kBadRequest };

std::string_view to_string(ApiErrorCode code);

struct ApiError {
  ApiErrorCode code = ApiErrorCode::kBadRequest;
  std::string detail;
  std::vector<AnnotationViolation> violations;
  std::optional<uint64_t> expected_version;
  std::optional<uint64_t> actual_version;

  int http_status() const;
  std::string to_json() const;
};

// HTTP front end over the inventory, alignment table, corpus and record
// store. All payloads are JSON.
class Service {
 public:
  // Loads every input named by `config`. Throws on unreadable inputs and on
  // a corrupt store (the StoreError message carries a recovery hint).
  explicit Service(const ServiceConfig &config, StoreOptions store_options = {});
  ~Service();
  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Binds the configured address and returns the bound port. Throws
  // ConfigError(kBadValue) if the bind fails.
  int bind();
  // Serves until stop(). Requires bind().
  void run();
  void stop();

  const Inventory &inventory() const;
  RecordStore &store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Loads, binds and serves until SIGINT or SIGTERM. Progress and errors go
// to `log`. Returns a process exit code.
int run_service(const ServiceConfig &config, const StoreOptions &store_options,
                std::ostream &log);

}  // namespace semrel

#endif  // SEMREL_SERVICE_H_
