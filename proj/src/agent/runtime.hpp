#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agent/reasoner.hpp"
#include "agent/request.hpp"

namespace coact::agent {

struct PlanResult {
  bool is_action_needed = false;
  Plan plan;
  std::string note;  // why no action, when applicable
};

// Partition of one window's observed canvas delta into the part explained by
// the agent's executed calls and the remainder (the user's concurrent work).
// Overrides are expectations the user countermanded: a value the agent set
// that ended up different or absent, or an agent-created node the user
// removed (key "@node"), or an undone structural move (key "@position").
struct AttributionReport {
  canvas::ChangeSet agent;
  canvas::ChangeSet user;
  std::vector<canvas::PropDelta> overrides;

  bool user_activity() const { return !user.empty() || !overrides.empty(); }
  Json to_json() const;
};

AttributionReport attribute_changes(const canvas::CanvasSnapshot& before,
                                    const canvas::CanvasSnapshot& after,
                                    const canvas::ChangeSet& expected);

struct FeedbackNote {
  bool present = false;
  std::string category;  // tool_failure | completion | override_ack
  std::string message;
};

// What the surrounding session injects at an iteration boundary…
struct BoundaryEvents {
  std::vector<canvas::ToolCall> user_calls;
  std::optional<std::string> additional_input;
  bool attention = false;  // observation marker; recorded by the caller, ignored here
  bool terminate = false;
  QualityMode quality = QualityMode::Normal;
};

// …and inside the agent's acting window, pinned between two of its calls.
struct WindowInjection {
  int after_call_index = 0;  // 0 = before the agent's first call of the window
  std::vector<canvas::ToolCall> user_calls;
  std::optional<std::string> additional_input;
  bool terminate = false;
};

class TurnDriver {
 public:
  virtual ~TurnDriver() = default;
  // Called before each iteration with the plan as it stands (the plan is on
  // screen; a watching user reads it). plan_window is called once per
  // iteration — batch may be empty — so injections can land even when the
  // agent has nothing left to do.
  virtual BoundaryEvents at_boundary(int iteration, const Plan& plan) = 0;
  virtual std::vector<WindowInjection> plan_window(int iteration,
                                                   const std::vector<canvas::ToolCall>& batch,
                                                   const Plan& plan) = 0;
};

// Every applied call, in exact execution order, for session logging.
struct OpRecord {
  canvas::ToolCall call;
  canvas::ToolResult result;
  int iteration = 0;
  bool in_window = false;  // false: boundary slot
};
using OpSink = std::function<void(const OpRecord&)>;

struct IterationRecord {
  int iteration = 0;
  std::string reasoner_note;
  std::vector<canvas::ToolCall> agent_calls;
  std::vector<bool> call_ok;
  AttributionReport attribution;
  Json plan_before;
  Json plan_after;
  bool plan_changed = false;
  FeedbackNote feedback;
  bool terminated_in_window = false;
};

enum class TurnStatus { Completed, Terminated, NoProgress, IterationCap, NoAction };
const char* turn_status_name(TurnStatus status);

struct TurnResult {
  TurnStatus status = TurnStatus::Completed;
  int iterations = 0;
  Plan final_plan;
  std::vector<IterationRecord> records;
  canvas::ChangeSet turn_agent_changes;
  canvas::ChangeSet turn_user_changes;  // boundary and window activity combined
};

struct TurnConfig {
  int max_iterations = 10;
  int batch_limit = 6;
};

class AgentRuntime {
 public:
  AgentRuntime(canvas::CanvasDocument& doc, AgentContext ctx, ReasonerFn reasoner = {});

  // Shallow understanding + planning. Chatter and unresolvable targets come
  // back with is_action_needed=false.
  PlanResult generate_plan(const std::string& request_text,
                           std::optional<NodeId> selection = std::nullopt) const;

  TurnResult run_turn(Plan plan, TurnDriver& driver, const TurnConfig& config, const OpSink& sink);

  const AgentContext& context() const { return ctx_; }
  canvas::CanvasDocument& document() { return doc_; }

 private:
  canvas::CanvasDocument& doc_;
  AgentContext ctx_;
  ReasonerFn reasoner_;
};

// Plan maintenance, exposed for direct exercise. `areas` (optional) lets a
// user-created node claim a still-pending top-level goal item.
Plan update_plan(const Plan& plan, const AttributionReport& report,
                 const std::optional<std::string>& additional_input, const canvas::CanvasDocument& doc,
                 const AgentContext* areas = nullptr);

FeedbackNote evaluate_feedback(const std::vector<canvas::ToolCall>& issued,
                               const std::vector<bool>& call_ok, const AttributionReport& report,
                               const Plan& plan, bool turn_complete);

bool goal_satisfied(const Plan& plan, const canvas::CanvasDocument& doc);
double goal_progress(const Plan& plan, const canvas::CanvasDocument& doc);

// Resolves "#<id>" / "'<name>'" request references against the document.
std::optional<NodeId> resolve_ref(const canvas::CanvasDocument& doc, const std::string& ref);

}  // namespace coact::agent
