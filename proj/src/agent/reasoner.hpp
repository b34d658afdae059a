#pragma once

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "agent/plan.hpp"
#include "canvas/changeset.hpp"

namespace coact::agent {

struct ReasonerInput {
  const canvas::CanvasDocument& doc;
  const Plan& plan;
  const AgentContext& ctx;
  // Accumulated user activity this turn; the agent yields these unless a
  // predicate was explicitly re-asserted by the user (user_directed).
  const std::set<std::pair<NodeId, std::string>>& user_touched;
  const std::set<NodeId>& user_deleted;
  int iteration = 1;  // 1-based
  QualityMode quality = QualityMode::Normal;
  int batch_limit = 6;
};

struct ReasonerOutput {
  // One window's worth of calls. Parent parameters may reference goal items
  // not yet created as "@pending:<item key>"; the runtime substitutes the
  // real id once that item's create call has landed.
  std::vector<canvas::ToolCall> calls;
  std::map<int, std::string> creates_item;  // call index -> goal item key it creates
  std::string note;                         // short reasoning line for the log
};

// The decision procedure that turns (plan, canvas) into the next batch of
// calls. The deterministic reference policy lives below; an external service
// can be plugged in through the same signature.
using ReasonerFn = std::function<ReasonerOutput(const ReasonerInput&)>;

ReasonerOutput reference_reasoner(const ReasonerInput& input);

}  // namespace coact::agent
