#include "ecoprompt/event_log.hpp"

#include <chrono>
#include <ctime>
#include <system_error>

#include "ecoprompt/error.hpp"

namespace ecoprompt {

using nlohmann::json;

json to_json(const EventRecord& r) {
  return json{{"ts", r.timestamp}, {"id", r.id}, {"kind", r.kind}, {"payload", r.payload}};
}

EventRecord record_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::malformed, "record is not a JSON object");
  auto str = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw Error(ErrorCode::malformed, std::string("record field '") + key + "' missing or not a string");
    }
    return it->get<std::string>();
  };
  EventRecord r{str("ts"), str("id"), str("kind"), json::object()};
  auto it = j.find("payload");
  if (it == j.end() || !it->is_object()) {
    throw Error(ErrorCode::malformed, "record field 'payload' missing or not an object");
  }
  r.payload = *it;
  return r;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

ReadResult read_log(const std::filesystem::path& path, bool tolerate_torn_tail) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  ReadResult result;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    const std::string line = content.substr(pos, terminated ? nl - pos : std::string::npos);
    pos = terminated ? nl + 1 : content.size();
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json j = json::parse(line, nullptr, false);
    try {
      if (j.is_discarded()) throw Error(ErrorCode::malformed, "invalid JSON");
      result.records.push_back({line_no, record_from_json(j)});
    } catch (const Error& e) {
      if (!terminated && tolerate_torn_tail) {
        result.torn_tail = true;
        break;
      }
      throw Error(ErrorCode::malformed,
                  path.filename().string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return result;
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) count_ = read_log(path_).records.size();
  open_for_append();
}

void EventLog::open_for_append() {
  out_.close();
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw Error(ErrorCode::io, "cannot open " + path_.string() + " for appending");
}

void EventLog::append(const EventRecord& record) {
  const std::string line = to_json(record).dump() + '\n';
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw Error(ErrorCode::io, "write to " + path_.string() + " failed");
  ++count_;
}

void EventLog::rewrite(const std::vector<EventRecord>& records) {
  const std::filesystem::path tmp = path_.string() + ".tmp";
  {
    std::ofstream t(tmp, std::ios::binary | std::ios::trunc);
    if (!t) throw Error(ErrorCode::io, "cannot create " + tmp.string());
    for (const auto& r : records) t << to_json(r).dump() << '\n';
    t.flush();
    if (!t) throw Error(ErrorCode::io, "write to " + tmp.string() + " failed");
  }
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) throw Error(ErrorCode::io, "rename " + tmp.string() + ": " + ec.message());
  count_ = records.size();
  open_for_append();
}

void EventLog::truncate_to(const std::vector<LoggedRecord>& intact) {
  std::vector<EventRecord> records;
  records.reserve(intact.size());
  for (const auto& r : intact) records.push_back(r.record);
  rewrite(records);
}

void EventLog::flush() { out_.flush(); }

}  // namespace ecoprompt
