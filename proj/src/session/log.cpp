#include "session/log.hpp"

#include <sstream>

#include "support/error.hpp"
#include "support/gzip.hpp"

namespace coact::session {

std::string SessionLog::serialize() const {
  std::string out = header.dump();
  out.push_back('\n');
  for (const auto& ev : events) {
    out += ev.dump();
    out.push_back('\n');
  }
  return out;
}

SessionLog SessionLog::parse(const std::string& text) {
  SessionLog log;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::CorruptLog,
                  "line " + std::to_string(line_no) + " is not valid JSON: " + e.what());
    }
    if (!have_header) {
      if (!j.is_object() || j.value("format", std::string()) != kLogFormat)
        throw Error(ErrorCode::CorruptLog, "first line is not a " + std::string(kLogFormat) + " header");
      log.header = std::move(j);
      have_header = true;
      continue;
    }
    if (!j.is_object() || !j.contains("type"))
      throw Error(ErrorCode::CorruptLog, "line " + std::to_string(line_no) + " has no event type");
    log.events.push_back(std::move(j));
  }
  if (!have_header) throw Error(ErrorCode::CorruptLog, "log is empty");
  return log;
}

SessionLog SessionLog::load(const std::string& path) { return parse(read_file_maybe_gzip(path)); }

const Json* SessionLog::final_canvas() const {
  for (auto it = events.rbegin(); it != events.rend(); ++it)
    if (it->value("type", std::string()) == "final_canvas") return &*it;
  return nullptr;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace coact::session
