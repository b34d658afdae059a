#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "agent/goal.hpp"

namespace coact::agent {

// Where the agent is allowed to work by default, and where the user keeps
// their own material.
struct AgentContext {
  NodeId workspace;
  NodeId user_area;
};

enum class QualityMode { Normal, Sloppy, Inert };
const char* quality_mode_name(QualityMode mode);

// The agent's live plan for one request: the goal, which goal items are
// already realized on canvas (bindings), and which were handed back to the
// user (waived). Canonical serialization is the comparison currency for
// plan-stability checks.
struct Plan {
  GoalSpec goal;
  std::map<std::string, NodeId> bindings;  // item key -> node id
  std::set<std::string> waived;            // item keys the agent no longer pursues
  std::uint64_t version = 1;
  std::string text;  // rendered narrative shown to the user / written to the log

  Json to_json() const;
  static Plan from_json(const Json& j);
  std::string canonical() const;  // byte-stable dump of to_json()

  bool operator==(const Plan&) const = default;
};

std::string render_plan_text(const Plan& plan, const canvas::CanvasDocument* doc);

}  // namespace coact::agent
