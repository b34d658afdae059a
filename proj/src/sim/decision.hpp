#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sim/policy.hpp"
#include "sim/taxonomy.hpp"
#include "support/rng.hpp"

namespace coact::sim {

// One visit to a decision point of the flowchart. Points: 'a' mental model,
// 'b' task importance, 'c' trigger check, 'd' enabling factors, 'e' agent
// finished, 'f' task changed. Outcomes are fixed vocabulary per point.
struct TraceStep {
  int boundary = 1;
  char point = 'a';
  std::string input;
  std::string outcome;

  Json to_json() const;
  static TraceStep from_json(const Json& j);
  bool operator==(const TraceStep&) const = default;
};

// Loop labels: 'g' full delegation, 'h' continuous observation,
// 'i' intervention, 'j' task redirection.
struct DecisionTrace {
  std::vector<TraceStep> steps;
  std::set<char> loops;

  Json to_json() const;
  static DecisionTrace from_json(const Json& j);
};

// Validates a step sequence against the flowchart's edge table: every
// consecutive pair must be a legal transition, boundaries must advance only
// at f, and the sequence must end on a terminal outcome.
bool validate_trace(const std::vector<TraceStep>& steps, std::string* why = nullptr);

// Recomputes loop labels from a step sequence (the authority for both the
// walker and the analyzer).
std::set<char> detect_loops(const std::vector<TraceStep>& steps);

// Environmental context consulted by the walk at one boundary.
struct WalkContext {
  bool misalignment = false;      // the agent's plan diverges from the user's intent
  bool quality_violation = false; // the previous window visibly degraded the canvas
  bool agent_wrapping_up = false; // the goal already holds; the agent is about to finish
  // Which codes the current canvas/plan state can actually realize; null
  // means everything is realizable. Codes filtered out here behave exactly
  // like a factor mismatch: the user holds back.
  std::function<bool(ActionCode)> code_eligible;
};

// What the user decided to do during one agent iteration.
struct BoundaryDecision {
  Category category = Category::Observational;  // O, H, or the intervention category
  std::optional<ActionCode> code;                // set for C/D/T
  std::optional<Trigger> trigger;
  EnablingFactors factors;
  bool no_intervention = false;  // a trigger fired but the user held back
};

// Walks the decision model for one turn. Call `at_boundary` before each agent
// iteration, then exactly one of `close_boundary` (agent still has work or
// just finished) — except after a Terminating decision, which ends the walk
// by itself.
class UserSim {
 public:
  UserSim(const SimPolicy& policy, Rng rng);

  BoundaryDecision at_boundary(int boundary, const WalkContext& ctx);
  void close_boundary(int boundary, bool agent_finished, bool task_changed);

  const DecisionTrace& trace() const { return trace_; }
  DecisionTrace& trace() { return trace_; }
  const std::set<Category>& categories() const { return categories_; }
  const std::set<ActionCode>& codes() const { return codes_; }
  bool terminated() const { return terminated_; }

  // Exposed for conformance tests.
  std::optional<Trigger> sample_trigger(const WalkContext& ctx);

 private:
  const SimPolicy& policy_;
  Rng rng_;
  DecisionTrace trace_;
  std::set<Category> categories_;
  std::set<ActionCode> codes_;
  bool started_ = false;
  bool has_mental_model_ = true;
  double importance_ = 0.0;
  bool observe_gate_ = false;  // forces one observation boundary after C/D
  bool terminated_ = false;

  double sample_importance();
  TaskImportance importance_band() const;
};

// Code selection within a triggered category. Throws Error(IncompatiblePair)
// when the trigger cannot lead to the category at all.
ActionCode select_code(Category category, Trigger trigger, const EnablingFactors& factors,
                       const SimPolicy& policy, Rng& rng);

// Same choice restricted to an eligible subset (must be non-empty codes of
// the category). Hard trigger-code mappings are honored when eligible.
ActionCode select_code_among(const std::vector<ActionCode>& eligible, Category category,
                             Trigger trigger, const EnablingFactors& factors,
                             const SimPolicy& policy, Rng& rng);

}  // namespace coact::sim
