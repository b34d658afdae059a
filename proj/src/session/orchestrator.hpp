#pragma once

#include <string>

#include "canvas/document.hpp"
#include "session/config.hpp"
#include "session/log.hpp"
#include "session/script.hpp"

namespace coact::session {

struct SessionOutcome {
  SessionLog log;
  int turns = 0;
};

// Runs one complete session: sets up the shared canvas, walks the script,
// interleaves the simulated user with the agent on a logical tick clock, and
// returns the canonical log. Deterministic: the per-session seed is derived
// from config.seed and session_index.
SessionOutcome run_session(const SessionConfig& config, int session_index);

// Reapplies every canvas op of the log, in order, onto a fresh document.
// Throws Error(CorruptLog) on malformed op events.
canvas::CanvasSnapshot replay(const SessionLog& log);

// Replays and byte-compares against the logged final canvas. Returns false
// on divergence (reason in *why); throws Error(CorruptLog) when the log has
// no final canvas to compare against.
bool verify_replay(const SessionLog& log, std::string* why = nullptr);

}  // namespace coact::session
