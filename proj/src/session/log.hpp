#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace coact::session {

using Json = nlohmann::json;

inline constexpr const char* kLogFormat = "coact-log/1";

// A session log: one header object plus ordered event objects, serialized as
// JSON Lines. Canvas mutations ("op" events) double as the ground-truth actor
// ledger; "signal" events carry requests, attention marks, typed input, and
// termination; "decision"/"trace" events carry the simulated user's ground
// truth; "turn_start"/"turn_end" bracket turns; "final_canvas" closes the log.
struct SessionLog {
  Json header;
  std::vector<Json> events;

  std::string serialize() const;

  // Throws Error(CorruptLog) on malformed lines or a missing/foreign header.
  static SessionLog parse(const std::string& text);
  // Reads a file (plain or gzip) and parses it.
  static SessionLog load(const std::string& path);

  // Last final_canvas event, or nullptr when the log has none.
  const Json* final_canvas() const;
};

// FNV-1a over a byte string; the config-hash primitive for log headers.
std::uint64_t fnv1a(const std::string& data);
std::string hex64(std::uint64_t value);

}  // namespace coact::session
