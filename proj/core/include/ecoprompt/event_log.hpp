#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ecoprompt {

/// One line of a JSONL log: {"ts", "id", "kind", "payload"}.
struct EventRecord {
  std::string timestamp;  // ISO-8601 UTC, informational only
  std::string id;         // session or game id
  std::string kind;
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const EventRecord&) const = default;
};

nlohmann::json to_json(const EventRecord& record);
/// Throws Error(malformed) if a field is missing or has the wrong type.
EventRecord record_from_json(const nlohmann::json& j);

std::string utc_timestamp();

struct LoggedRecord {
  std::size_t line = 0;  // 1-based
  EventRecord record;
};

struct ReadResult {
  std::vector<LoggedRecord> records;
  // A final line without its newline that fails to parse: the tail of an
  // append interrupted by a crash. Earlier bad lines are errors.
  bool torn_tail = false;
};

/// Reads a whole log. Throws Error(malformed) naming the first bad line, or
/// Error(io) if the file cannot be opened.
ReadResult read_log(const std::filesystem::path& path, bool tolerate_torn_tail = true);

/// Append-only writer. Each append writes one complete line and flushes.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }
  std::size_t record_count() const noexcept { return count_; }

  void append(const EventRecord& record);

  /// Replaces the file with `records` (typically one snapshot) via a
  /// temporary file and rename, then reopens for appending.
  void rewrite(const std::vector<EventRecord>& records);

  /// Drops a torn final line left by a crash so later appends start clean.
  void truncate_to(const std::vector<LoggedRecord>& intact);

  void flush();

 private:
  void open_for_append();

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t count_ = 0;
};

}  // namespace ecoprompt
