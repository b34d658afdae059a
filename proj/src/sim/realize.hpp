#pragma once

#include <string>
#include <vector>

#include "agent/plan.hpp"
#include "agent/runtime.hpp"
#include "canvas/document.hpp"
#include "sim/taxonomy.hpp"
#include "support/rng.hpp"

namespace coact::sim {

// One concrete thing the simulated user does to realize a decided action:
// either a canvas operation, a typed instruction, an attention marker, or a
// stop request. Window events additionally carry the batch position they are
// injected at.
struct ActionEvent {
  enum class Kind { CanvasOp, AdditionalInput, Attention, Terminate };

  Kind kind = Kind::CanvasOp;
  canvas::ToolCall call;   // Kind::CanvasOp
  std::string text;        // Kind::AdditionalInput
  bool in_window = false;  // realized mid-batch instead of at the boundary
  int after_call_index = 0;
};

// Everything the realizer may look at besides the canvas itself. `batch` is
// only available for window-timed actions; `own_count` numbers the user's own
// parallel work so far; the `next_section_*` fields describe what the user
// would rather be building when they redirect the agent.
struct RealizeContext {
  const agent::Plan* plan = nullptr;
  agent::AgentContext areas;
  const std::vector<canvas::ToolCall>* batch = nullptr;
  int own_count = 0;
  std::string next_section_type = "hero";
  std::string next_section_name;
  int next_section_cards = 4;
};

// Whether the code plays out inside the agent's working window (true) or at
// an iteration boundary (false).
bool code_needs_window(ActionCode code);

// Whether the code can be realized against the current canvas and plan at
// all. Boundary-time check; window codes are judged on boundary-visible state.
bool code_eligible(ActionCode code, const canvas::CanvasDocument& doc, const RealizeContext& ctx);

// Produce the concrete events for a decided code. Throws
// Error(ErrorCode::NoEligibleTarget) when the canvas offers nothing to act
// on; callers are expected to have filtered with code_eligible first.
std::vector<ActionEvent> realize_actions(ActionCode code, const canvas::CanvasDocument& doc,
                                         const RealizeContext& ctx, Rng& rng);

}  // namespace coact::sim
