#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fusebench {

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Append-only newline-delimited JSON log. Every append is written and
// fsync'ed before returning. On load, a trailing record that is incomplete
// (no newline) or unparsable is treated as torn: it is dropped and the file
// is truncated back to the last intact record, so what survives a crash is
// always a prefix of what was appended.
class Journal {
 public:
  explicit Journal(std::filesystem::path path);

  std::vector<nlohmann::json> load();
  void append(const nlohmann::json& record);

  // Atomically replaces the log with an empty one.
  void reset();

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// Writes to a temporary sibling, fsyncs, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

std::string read_file(const std::filesystem::path& path);
std::optional<std::string> read_file_if_exists(
    const std::filesystem::path& path);

// Snapshot-plus-journal store. Each appended event carries a monotonically
// increasing "seq"; a snapshot records the last seq it folds in, and replay
// skips journal events at or below it, so a crash between writing the
// snapshot and truncating the journal is harmless.
class EventStore {
 public:
  explicit EventStore(std::filesystem::path dir, std::string name);

  struct Loaded {
    std::optional<nlohmann::json> snapshot;
    std::vector<nlohmann::json> events;  // seq > snapshot seq, in order
  };
  Loaded load();

  // Stamps `event` with the next seq and appends it durably.
  void append(nlohmann::json event);

  // Persists `state` as the snapshot covering every event appended so far,
  // then empties the journal.
  void compact(const nlohmann::json& state);

  std::uint64_t last_seq() const noexcept { return seq_; }
  std::size_t events_since_snapshot() const noexcept { return pending_; }

 private:
  std::filesystem::path snapshot_path_;
  Journal journal_;
  std::uint64_t seq_ = 0;
  std::size_t pending_ = 0;
};

}  // namespace fusebench
