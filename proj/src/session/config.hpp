#pragma once

#include <cstdint>
#include <string>

#include "sim/policy.hpp"

namespace coact::session {

using Json = nlohmann::json;

// Everything a simulation run needs: the user policy, seeding, batch size,
// and how scripts are produced (generated or loaded from a file).
struct SessionConfig {
  sim::SimPolicy policy;
  std::uint64_t seed = 1;
  int sessions = 10;
  int turn_budget = 40;  // hard cap on turns per session
  int batch_limit = 6;
  int min_requests = 17;
  int max_requests = 26;
  double misalignment_rate = 0.25;
  double quality_rate = 0.35;
  std::string script_file;  // non-empty: fixed script instead of the generator

  // Throws Error(ConfigInvalid).
  void validate() const;

  Json to_config() const;  // {session: {...}, policy: {...}, ...}
  static SessionConfig from_config(const Json& config);
  static SessionConfig load(const std::string& path);

  // Stable identity of the run parameters, stamped into log headers. The
  // seed itself is excluded: it is reported separately.
  std::uint64_t config_hash() const;
};

}  // namespace coact::session
