#include "session/config.hpp"

#include "session/log.hpp"
#include "support/error.hpp"
#include "support/toml.hpp"

namespace coact::session {

void SessionConfig::validate() const {
  policy.validate();
  if (sessions < 1) throw Error(ErrorCode::ConfigInvalid, "sessions must be >= 1");
  if (turn_budget < 1) throw Error(ErrorCode::ConfigInvalid, "turn budget must be >= 1");
  if (batch_limit < 1) throw Error(ErrorCode::ConfigInvalid, "batch limit must be >= 1");
  if (min_requests < 1 || max_requests < min_requests)
    throw Error(ErrorCode::ConfigInvalid, "request count bounds are inconsistent");
  if (misalignment_rate < 0.0 || misalignment_rate > 1.0)
    throw Error(ErrorCode::ConfigInvalid, "misalignment_rate must be in [0, 1]");
  if (quality_rate < 0.0 || quality_rate > 1.0)
    throw Error(ErrorCode::ConfigInvalid, "quality_rate must be in [0, 1]");
}

Json SessionConfig::to_config() const {
  Json config = policy.to_config();
  Json session{{"seed", seed},
               {"sessions", sessions},
               {"turn_budget", turn_budget},
               {"batch_limit", batch_limit},
               {"min_requests", min_requests},
               {"max_requests", max_requests},
               {"misalignment_rate", misalignment_rate},
               {"quality_rate", quality_rate}};
  if (!script_file.empty()) session["script_file"] = script_file;
  config["session"] = std::move(session);
  return config;
}

SessionConfig SessionConfig::from_config(const Json& config) {
  SessionConfig out;
  out.policy = sim::SimPolicy::from_config(config);
  if (config.contains("session")) {
    const Json& s = config.at("session");
    if (!s.is_object()) throw Error(ErrorCode::ConfigInvalid, "[session] must be a table");
    out.seed = s.value("seed", out.seed);
    out.sessions = s.value("sessions", out.sessions);
    out.turn_budget = s.value("turn_budget", out.turn_budget);
    out.batch_limit = s.value("batch_limit", out.batch_limit);
    out.min_requests = s.value("min_requests", out.min_requests);
    out.max_requests = s.value("max_requests", out.max_requests);
    out.misalignment_rate = s.value("misalignment_rate", out.misalignment_rate);
    out.quality_rate = s.value("quality_rate", out.quality_rate);
    out.script_file = s.value("script_file", out.script_file);
  }
  out.validate();
  return out;
}

SessionConfig SessionConfig::load(const std::string& path) {
  return from_config(load_config_file(path));
}

std::uint64_t SessionConfig::config_hash() const {
  Json config = to_config();
  config["session"].erase("seed");
  return fnv1a(config.dump());
}

}  // namespace coact::session
