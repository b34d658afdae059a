#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace coact::session {

using Json = nlohmann::json;

// One scripted user request. `intent` is what the user actually wants; when
// it differs from `text` the turn starts misaligned and the simulated user
// may react to the divergence. `sloppy_iterations` lists the iterations
// (1-based) where the agent's output is forced to degrade.
struct ScriptRequest {
  std::string text;
  std::string intent;               // empty: aligned with text
  std::vector<int> sloppy_iterations;

  Json to_json() const;
  static ScriptRequest from_json(const Json& j);
};

struct SessionScript {
  std::vector<ScriptRequest> requests;

  // Throws Error(ConfigInvalid) on empty scripts or schedule indices > 10.
  void validate() const;

  Json to_json() const;
  static SessionScript from_json(const Json& j);
  static SessionScript load(const std::string& path);
};

struct ScriptOptions {
  int min_requests = 17;
  int max_requests = 26;
  double misalignment_rate = 0.25;
  double quality_rate = 0.35;
};

// Deterministic request generator: a portfolio-page building session mixing
// fresh sections with style edits on earlier ones.
SessionScript generate_script(std::uint64_t seed, const ScriptOptions& options);

}  // namespace coact::session
