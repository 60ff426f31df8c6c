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

#include "semrel/record_store.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json_codec.h"
#include "semrel/record_codec.h"

namespace semrel {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_all(int fd, std::string_view data, const fs::path &path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StoreError(StoreErrorKind::kIo,
                       "write to " + path.string() + " failed: " + std::strerror(errno));
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
}

void sync_dir(const fs::path &dir) {
  int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

void merge(RecordMap *records, AnnotationRecord record) {
  auto it = records->find(record.id);
  if (it != records->end() && it->second->version >= record.version) return;
  std::string id = record.id;
  (*records)[id] = std::make_shared<const AnnotationRecord>(std::move(record));
}

void load_snapshot(const fs::path &path, RecordMap *records) {
  if (!fs::exists(path)) return;
  json_codec::Json doc;
  try {
    doc = json_codec::Json::parse(read_file(path));
    for (const auto &r : doc.at("records")) merge(records, json_codec::record_from_json(r));
  } catch (const std::exception &e) {
    throw StoreError(StoreErrorKind::kCorrupt,
                     "snapshot " + path.string() + " is unreadable (" + e.what() +
                         "). Restore it from a backup or move it aside to rebuild "
                         "from the log alone.");
  }
}

// Applies complete log lines. Returns the byte length of the valid prefix;
// anything after it is a torn final write.
size_t replay_log(const fs::path &path, const std::string &content, RecordMap *records) {
  size_t pos = 0;
  int line_no = 0;
  while (pos < content.size()) {
    size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) break;
    ++line_no;
    std::string_view line(content.data() + pos, nl - pos);
    if (!line.empty()) {
      try {
        merge(records, record_from_json(line));
      } catch (const Error &e) {
        throw StoreError(StoreErrorKind::kCorrupt,
                         "record log " + path.string() + " line " + std::to_string(line_no) +
                             " is corrupt (" + e.what() +
                             "). Inspect the line; truncating the log just before it "
                             "recovers every earlier write.");
      }
    }
    pos = nl + 1;
  }
  return pos;
}

}  // namespace

RecordStore::RecordStore(fs::path log_path, StoreOptions options)
    : log_path_(std::move(log_path)), options_(std::move(options)) {
  if (log_path_.has_parent_path()) fs::create_directories(log_path_.parent_path());
  replay();
  fd_ = ::open(log_path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw StoreError(StoreErrorKind::kIo,
                     "cannot open " + log_path_.string() + ": " + std::strerror(errno));
  }
}

RecordStore::~RecordStore() {
  if (fd_ >= 0) ::close(fd_);
}

fs::path RecordStore::snapshot_path() const {
  fs::path p = log_path_;
  p += ".snapshot";
  return p;
}

void RecordStore::replay() {
  auto records = std::make_shared<RecordMap>();
  load_snapshot(snapshot_path(), records.get());
  if (fs::exists(log_path_)) {
    std::string content = read_file(log_path_);
    size_t valid = replay_log(log_path_, content, records.get());
    if (valid < content.size()) {
      // Drop the unacknowledged tail so the next append starts on a fresh line.
      fs::resize_file(log_path_, valid);
    }
  }
  records_ = std::move(records);
}

std::shared_ptr<const RecordMap> RecordStore::snapshot() const {
  std::shared_lock lock(read_mu_);
  return records_;
}

std::optional<AnnotationRecord> RecordStore::get(const std::string &id) const {
  auto snap = snapshot();
  auto it = snap->find(id);
  if (it == snap->end()) return std::nullopt;
  return *it->second;
}

std::vector<AnnotationRecord> RecordStore::records() const {
  auto snap = snapshot();
  std::vector<AnnotationRecord> out;
  out.reserve(snap->size());
  for (const auto &[id, r] : *snap) out.push_back(*r);
  return out;
}

std::string RecordStore::now() const {
  if (options_.clock) return options_.clock();
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RecordStore::append(const AnnotationRecord &record) {
  std::string line = record_to_json(record);
  line.push_back('\n');
  ++appends_;
  if (options_.torn_write_at != 0 && appends_ == options_.torn_write_at) {
    write_all(fd_, std::string_view(line).substr(0, line.size() / 2), log_path_);
    ::fsync(fd_);
    std::_Exit(137);
  }
  write_all(fd_, line, log_path_);
  if (::fsync(fd_) != 0) {
    throw StoreError(StoreErrorKind::kIo,
                     "fsync of " + log_path_.string() + " failed: " + std::strerror(errno));
  }
}

void RecordStore::publish(std::shared_ptr<const AnnotationRecord> record) {
  auto next = std::make_shared<RecordMap>(*snapshot());
  (*next)[record->id] = std::move(record);
  std::unique_lock lock(read_mu_);
  records_ = std::move(next);
}

AnnotationRecord RecordStore::create(AnnotationRecord record, const std::string &token) {
  std::lock_guard lock(write_mu_);
  if (snapshot()->count(record.id)) {
    throw StoreError(StoreErrorKind::kExists, "record '" + record.id + "' already exists");
  }
  record.version = 1;
  record.created_at = record.updated_at = now();
  record.mutation_token = token;
  append(record);
  publish(std::make_shared<const AnnotationRecord>(record));
  if (options_.snapshot_every && ++since_compaction_ >= options_.snapshot_every) compact();
  return record;
}

AnnotationRecord RecordStore::update(
    const std::string &id, uint64_t expected_version, const std::string &token,
    const std::function<AnnotationRecord(const AnnotationRecord &)> &mutate) {
  std::lock_guard lock(write_mu_);
  auto snap = snapshot();
  auto it = snap->find(id);
  if (it == snap->end()) {
    throw StoreError(StoreErrorKind::kNotFound, "no record '" + id + "'");
  }
  const AnnotationRecord &current = *it->second;
  if (current.version != expected_version) {
    if (!token.empty() && current.version == expected_version + 1 &&
        current.mutation_token == token) {
      return current;
    }
    throw StoreError(StoreErrorKind::kConflict,
                     "record '" + id + "' is at version " + std::to_string(current.version) +
                         ", request expected " + std::to_string(expected_version),
                     expected_version, current.version);
  }
  AnnotationRecord next = mutate(current);
  next.id = current.id;
  next.version = current.version + 1;
  next.created_at = current.created_at;
  next.updated_at = now();
  next.mutation_token = token;
  append(next);
  publish(std::make_shared<const AnnotationRecord>(next));
  if (options_.snapshot_every && ++since_compaction_ >= options_.snapshot_every) compact();
  return next;
}

void RecordStore::compact() {
  // Callers hold write_mu_ or are the sole owner.
  auto snap = snapshot();
  json_codec::Json doc;
  doc["format"] = 1;
  json_codec::Json list = json_codec::Json::array();
  for (const auto &[id, r] : *snap) list.push_back(json_codec::to_json(*r));
  doc["records"] = std::move(list);
  std::string body = doc.dump() + "\n";

  fs::path tmp = snapshot_path();
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) {
    throw StoreError(StoreErrorKind::kIo, "cannot write " + tmp.string());
  }
  write_all(fd, body, tmp);
  ::fsync(fd);
  ::close(fd);
  fs::rename(tmp, snapshot_path());
  sync_dir(log_path_.parent_path());
  // A crash before this truncate leaves log lines the snapshot already
  // covers; replay ignores them because their versions are not newer.
  if (::ftruncate(fd_, 0) != 0) {
    throw StoreError(StoreErrorKind::kIo, "cannot truncate " + log_path_.string());
  }
  ::fsync(fd_);
  since_compaction_ = 0;
}

std::string RecordStore::next_id() const {
  auto snap = snapshot();
  uint64_t max = 0;
  for (const auto &[id, r] : *snap) {
    if (id.size() > 1 && id[0] == 'r' &&
        std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      max = std::max<uint64_t>(max, std::stoull(id.substr(1)));
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "r%06llu", static_cast<unsigned long long>(max + 1));
  return buf;
}

std::vector<AnnotationRecord> read_store(const fs::path &log_path) {
  RecordMap records;
  fs::path snap = log_path;
  snap += ".snapshot";
  load_snapshot(snap, &records);
  if (!fs::exists(log_path) && !fs::exists(snap)) {
    throw StoreError(StoreErrorKind::kIo, "record store not found: " + log_path.string());
  }
  if (fs::exists(log_path)) replay_log(log_path, read_file(log_path), &records);
  std::vector<AnnotationRecord> out;
  out.reserve(records.size());
  for (const auto &[id, r] : records) out.push_back(*r);
  return out;
}

std::string record_set_digest(const std::vector<AnnotationRecord> &records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const AnnotationRecord &r : records) lines.push_back(record_to_json(r));
  std::sort(lines.begin(), lines.end());
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string &line : lines) {
    for (unsigned char c : line) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= '\n';
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace semrel
