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


#include <unistd.h>

#include <charconv>

#include "semrel/service.h"

namespace semrel {
namespace fs = std::filesystem;

ListenAddress parse_listen(const std::string &listen) {
  size_t colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw ConfigError(ConfigErrorKind::kBadValue,
                      "listen address '" + listen + "' is not of the form host:port");
  }
  ListenAddress addr;
  addr.host = listen.substr(0, colon);
  std::string_view port(listen);
  port.remove_prefix(colon + 1);
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), addr.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || addr.port < 0 ||
      addr.port > 65535) {
    throw ConfigError(ConfigErrorKind::kBadValue,
                      "listen address '" + listen + "' has an invalid port");
  }
  return addr;
}

void check_config(const ServiceConfig &config) {
  std::vector<std::string> problems;
  auto need = [&](const char *field, const fs::path &p, bool dir) {
    std::error_code ec;
    if (p.empty()) {
      problems.push_back(std::string(field) + " is not set");
    } else if (dir ? !fs::is_directory(p, ec) : !fs::is_regular_file(p, ec)) {
      problems.push_back(std::string(field) + " '" + p.string() + "' does not exist");
    }
  };
  need("corpus", config.corpus, true);
  need("inventory", config.inventory, false);
  need("alignment", config.alignment, false);
  if (config.store.empty()) {
    problems.push_back("store is not set");
  } else {
    fs::path dir = config.store.parent_path();
    if (dir.empty()) dir = ".";
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ::access(dir.c_str(), W_OK) != 0) {
      problems.push_back("store directory '" + dir.string() + "' is missing or not writable");
    }
  }
  parse_listen(config.listen);
  if (!problems.empty()) {
    std::string msg = "configuration does not resolve:";
    for (const std::string &p : problems) msg += "\n  " + p;
    throw ConfigError(ConfigErrorKind::kUnresolvedPath, msg);
  }
}

}  // namespace semrel
