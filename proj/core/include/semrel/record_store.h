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

#ifndef SEMREL_RECORD_STORE_H_
#define SEMREL_RECORD_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "semrel/annotation.h"
#include "semrel/error.h"

namespace semrel {

enum class StoreErrorKind { kCorrupt, kIo, kNotFound, kConflict, kExists };

class StoreError : public KindedError<StoreErrorKind> {
 public:
  using KindedError::KindedError;
  StoreError(StoreErrorKind kind, const std::string &message, uint64_t expected,
             uint64_t actual)
      : KindedError(kind, message), expected_(expected), actual_(actual) {}

  // Set for kConflict.
  std::optional<uint64_t> expected_version() const { return expected_; }
  std::optional<uint64_t> actual_version() const { return actual_; }

 private:
  std::optional<uint64_t> expected_;
  std::optional<uint64_t> actual_;
};

using RecordMap = std::map<std::string, std::shared_ptr<const AnnotationRecord>>;

struct StoreOptions {
  // Compact the log into the snapshot after this many appends; 0 disables.
  size_t snapshot_every = 256;
  // Test hook: on the n-th append (1-based) write half the line and
  // terminate the process, as a kill in the middle of a write would.
  size_t torn_write_at = 0;
  std::function<std::string()> clock;
};

// Append-only, file-backed record store.
//
// Every mutation appends the full new record version as one JSON line and
// fsyncs before returning. On open, the snapshot (<log>.snapshot) is loaded
// and the log replayed on top; for each id the highest version wins, which
// makes replay idempotent across an interrupted compaction. A trailing
// partial line (a write cut short by a crash) was never acknowledged and is
// truncated away; any other unparsable line is reported as corruption.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path log_path, StoreOptions options = {});
  ~RecordStore();
  RecordStore(const RecordStore &) = delete;
  RecordStore &operator=(const RecordStore &) = delete;

  // Reads never block on the write path beyond copying a pointer.
  std::shared_ptr<const RecordMap> snapshot() const;
  std::optional<AnnotationRecord> get(const std::string &id) const;
  std::vector<AnnotationRecord> records() const;

  // Throws kExists if the id is taken. Version is forced to 1.
  AnnotationRecord create(AnnotationRecord record, const std::string &token = "");

  // Optimistic update. If `expected_version` is stale, throws kConflict,
  // unless the current version was produced by this same `token` from
  // `expected_version`, in which case the current record is returned
  // unchanged (a retried request). `mutate` receives the current record and
  // returns the new content; version, token and timestamp are set here.
  AnnotationRecord update(const std::string &id, uint64_t expected_version,
                          const std::string &token,
                          const std::function<AnnotationRecord(const AnnotationRecord &)> &mutate);

  // Writes the snapshot atomically and truncates the log.
  void compact();

  // Generates the next free id of the form r000123.
  std::string next_id() const;

  const std::filesystem::path &log_path() const { return log_path_; }
  std::filesystem::path snapshot_path() const;

 private:
  void replay();
  void append(const AnnotationRecord &record);
  void publish(std::shared_ptr<const AnnotationRecord> record);
  std::string now() const;

  std::filesystem::path log_path_;
  StoreOptions options_;
  int fd_ = -1;
  size_t appends_ = 0;
  size_t since_compaction_ = 0;

  std::mutex write_mu_;
  mutable std::shared_mutex read_mu_;
  std::shared_ptr<const RecordMap> records_;
};

// Loads a store file read-only: snapshot plus log, without truncating a
// torn tail. Used by the offline CLI commands.
std::vector<AnnotationRecord> read_store(const std::filesystem::path &log_path);

// 64-bit FNV-1a over the canonical JSON lines in id order, as hex.
// Independent of input order.
std::string record_set_digest(const std::vector<AnnotationRecord> &records);

}  // namespace semrel

#endif  // SEMREL_RECORD_STORE_H_
