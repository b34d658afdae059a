#include "sim/decision.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "support/error.hpp"

namespace coact::sim {

Json TraceStep::to_json() const {
  return Json{{"boundary", boundary}, {"point", std::string(1, point)}, {"input", input}, {"outcome", outcome}};
}

TraceStep TraceStep::from_json(const Json& j) {
  TraceStep step;
  step.boundary = j.at("boundary").get<int>();
  const std::string point = j.at("point").get<std::string>();
  step.point = point.empty() ? '?' : point[0];
  step.input = j.value("input", "");
  step.outcome = j.at("outcome").get<std::string>();
  return step;
}

Json DecisionTrace::to_json() const {
  Json steps_j = Json::array();
  for (const auto& step : steps) steps_j.push_back(step.to_json());
  Json loops_j = Json::array();
  for (char loop : loops) loops_j.push_back(std::string(1, loop));
  return Json{{"steps", std::move(steps_j)}, {"loops", std::move(loops_j)}};
}

DecisionTrace DecisionTrace::from_json(const Json& j) {
  DecisionTrace trace;
  for (const auto& step : j.value("steps", Json::array()))
    trace.steps.push_back(TraceStep::from_json(step));
  for (const auto& loop : j.value("loops", Json::array())) {
    const std::string s = loop.get<std::string>();
    if (!s.empty()) trace.loops.insert(s[0]);
  }
  return trace;
}

namespace {

bool is_trigger_outcome(const std::string& outcome) {
  return trigger_from_name(outcome).has_value();
}

struct Successor {
  bool terminal = false;
  std::vector<char> next;     // allowed next points
  int boundary_delta = 0;     // applies to all entries in `next`
};

// The flowchart's edge table.
std::optional<Successor> successors(char point, const std::string& outcome) {
  switch (point) {
    case 'a':
      if (outcome == "yes") return Successor{false, {'b'}, 0};
      if (outcome == "no") return Successor{false, {'c'}, 0};
      return std::nullopt;
    case 'b':
      if (outcome == "hands_off") return Successor{false, {'e'}, 0};
      if (outcome == "observe") return Successor{false, {'c'}, 0};
      return std::nullopt;
    case 'c':
      if (outcome == "none") return Successor{false, {'e'}, 0};
      if (is_trigger_outcome(outcome)) return Successor{false, {'d'}, 0};
      return std::nullopt;
    case 'd':
      if (outcome == "terminating") return Successor{true, {}, 0};
      if (outcome == "concurrent" || outcome == "directive" || outcome == "no_intervention")
        return Successor{false, {'e'}, 0};
      return std::nullopt;
    case 'e':
      if (outcome == "yes") return Successor{true, {}, 0};
      if (outcome == "no") return Successor{false, {'f'}, 0};
      return std::nullopt;
    case 'f':
      if (outcome == "yes" || outcome == "no") return Successor{false, {'b', 'c'}, 1};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

bool validate_trace(const std::vector<TraceStep>& steps, std::string* why) {
  auto fail = [&](const std::string& message) {
    if (why) *why = message;
    return false;
  };
  if (steps.empty()) return fail("empty trace");
  if (steps.front().point != 'a' || steps.front().boundary != 1)
    return fail("trace must start at point a, boundary 1");

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TraceStep& step = steps[i];
    auto edge = successors(step.point, step.outcome);
    if (!edge) {
      std::ostringstream os;
      os << "illegal outcome '" << step.outcome << "' at point " << step.point;
      return fail(os.str());
    }
    const bool last = i + 1 == steps.size();
    if (last) {
      if (!edge->terminal) {
        std::ostringstream os;
        os << "trace ends mid-flow at point " << step.point << " (" << step.outcome << ")";
        return fail(os.str());
      }
      return true;
    }
    if (edge->terminal) return fail("steps continue after a terminal outcome");
    const TraceStep& next = steps[i + 1];
    if (std::find(edge->next.begin(), edge->next.end(), next.point) == edge->next.end()) {
      std::ostringstream os;
      os << "illegal transition " << step.point << "(" << step.outcome << ") -> " << next.point;
      return fail(os.str());
    }
    if (next.boundary != step.boundary + edge->boundary_delta) {
      std::ostringstream os;
      os << "boundary numbering breaks at step " << i + 1;
      return fail(os.str());
    }
  }
  return true;
}

std::set<char> detect_loops(const std::vector<TraceStep>& steps) {
  std::set<char> loops;
  std::map<int, bool> hands_off_at;
  std::map<int, bool> pure_observe_at;
  int max_boundary = 0;
  for (const auto& step : steps) {
    max_boundary = std::max(max_boundary, step.boundary);
    if (step.point == 'b' && step.outcome == "hands_off") hands_off_at[step.boundary] = true;
    if (step.point == 'c' && step.outcome == "none") pure_observe_at[step.boundary] = true;
    if (step.point == 'd' && (step.outcome == "concurrent" || step.outcome == "directive"))
      loops.insert('i');
    if (step.point == 'f' && step.outcome == "yes") loops.insert('j');
  }
  for (int b = 1; b < max_boundary; ++b) {
    if (hands_off_at[b] && hands_off_at[b + 1]) loops.insert('g');
    if (pure_observe_at[b] && pure_observe_at[b + 1]) loops.insert('h');
  }
  return loops;
}

// ---------------------------------------------------------------------------
// UserSim
// ---------------------------------------------------------------------------

UserSim::UserSim(const SimPolicy& policy, Rng rng) : policy_(policy), rng_(rng) {}

double UserSim::sample_importance() {
  const double u = rng_.uniform01();
  if (u < policy_.importance_high_p) return 2.0 / 3.0 + rng_.uniform01() / 3.0;
  if (u < policy_.importance_high_p + policy_.importance_low_p) return rng_.uniform01() / 3.0;
  return 1.0 / 3.0 + rng_.uniform01() / 3.0;
}

TaskImportance UserSim::importance_band() const {
  if (importance_ >= 2.0 / 3.0) return TaskImportance::UserMuchMore;
  if (importance_ >= 1.0 / 3.0) return TaskImportance::SimilarOrModeratelyMore;
  return TaskImportance::NoUserTask;
}

std::optional<Trigger> UserSim::sample_trigger(const WalkContext& ctx) {
  bool fired[6] = {false, false, false, false, false, false};
  int index = 0;
  for (Trigger trigger : kAllTriggers) {
    bool eligible = !ctx.agent_wrapping_up;
    if (trigger == Trigger::MisalignedInterpretation) eligible = eligible && ctx.misalignment;
    if (trigger == Trigger::QualityDrop) eligible = eligible && ctx.quality_violation;
    const double p = std::min(1.0, policy_.hazard_for(trigger));
    // always consume one draw so the stream stays aligned across contexts
    const double u = rng_.uniform01();
    fired[index++] = eligible && u < p;
  }
  static const Trigger priority[] = {Trigger::MisalignedInterpretation, Trigger::QualityDrop,
                                     Trigger::EmergingNewTask,          Trigger::FineGrainedDetailing,
                                     Trigger::EarlyOutcomeVisibility,   Trigger::IdeaSpark};
  for (Trigger trigger : priority) {
    int slot = 0;
    for (Trigger t : kAllTriggers) {
      if (t == trigger && fired[slot]) return trigger;
      ++slot;
    }
  }
  return std::nullopt;
}

BoundaryDecision UserSim::at_boundary(int boundary, const WalkContext& ctx) {
  BoundaryDecision out;
  if (!started_) {
    started_ = true;
    has_mental_model_ = rng_.uniform01() < policy_.mental_model_p;
    importance_ = sample_importance();
    trace_.steps.push_back({boundary, 'a',
                            std::string("mental_model=") + (has_mental_model_ ? "has" : "none"),
                            has_mental_model_ ? "yes" : "no"});
  }
  out.factors.mental_model = has_mental_model_ ? MentalModel::Has : MentalModel::None;

  if (has_mental_model_) {
    const TaskImportance band = importance_band();
    const bool hands_off = band == TaskImportance::UserMuchMore && !observe_gate_;
    observe_gate_ = false;
    std::ostringstream in;
    in << "importance=" << importance_ << " (" << importance_name(band) << ")";
    trace_.steps.push_back({boundary, 'b', in.str(), hands_off ? "hands_off" : "observe"});
    if (hands_off) {
      // own work progresses; its relative importance diminishes
      importance_ = std::max(0.0, importance_ - policy_.importance_decay);
      out.category = Category::HandsOff;
      out.code = ActionCode::FullDelegation;
      out.factors.importance = band;
      categories_.insert(Category::HandsOff);
      codes_.insert(ActionCode::FullDelegation);
      trace_.loops = detect_loops(trace_.steps);
      return out;
    }
  }

  // Observation path: the user is watching this iteration.
  out.category = Category::Observational;
  out.factors.importance = importance_band();
  categories_.insert(Category::Observational);
  codes_.insert(ActionCode::ObservationalMonitoring);

  std::ostringstream cin;
  cin << "misalignment=" << (ctx.misalignment ? "yes" : "no")
      << " quality_violation=" << (ctx.quality_violation ? "yes" : "no");
  auto trigger = sample_trigger(ctx);
  trace_.steps.push_back({boundary, 'c', cin.str(), trigger ? trigger_name(*trigger) : "none"});
  if (!trigger) {
    trace_.loops = detect_loops(trace_.steps);
    return out;
  }
  out.trigger = trigger;

  // Enabling-factor decision.
  auto finish_no_intervention = [&](const std::string& input) {
    trace_.steps.push_back({boundary, 'd', input, "no_intervention"});
    out.no_intervention = true;
    trace_.loops = detect_loops(trace_.steps);
    return out;
  };

  if (rng_.uniform01() < policy_.no_intervention_p)
    return finish_no_intervention("held_back=yes");

  {
    const double total = policy_.modality_verbal + policy_.modality_direct + policy_.modality_uncertain;
    const double x = rng_.uniform01() * total;
    if (x < policy_.modality_verbal)
      out.factors.modality = Modality::VerbalEasier;
    else if (x < policy_.modality_verbal + policy_.modality_direct)
      out.factors.modality = Modality::DirectEasier;
    else
      out.factors.modality = Modality::Uncertain;
  }
  if (rng_.uniform01() < policy_.coherence) {
    switch (out.factors.modality) {
      case Modality::VerbalEasier: out.factors.expectation = Expectation::VerbalUnderstood; break;
      case Modality::DirectEasier: out.factors.expectation = Expectation::DirectCollabSucceeds; break;
      case Modality::Uncertain: out.factors.expectation = Expectation::AgentIncapable; break;
    }
  } else {
    const double total = policy_.expect_direct + policy_.expect_verbal + policy_.expect_incapable;
    const double x = rng_.uniform01() * total;
    if (x < policy_.expect_direct)
      out.factors.expectation = Expectation::DirectCollabSucceeds;
    else if (x < policy_.expect_direct + policy_.expect_verbal)
      out.factors.expectation = Expectation::VerbalUnderstood;
    else
      out.factors.expectation = Expectation::AgentIncapable;
  }

  std::ostringstream din;
  din << "importance=" << importance_name(out.factors.importance)
      << " modality=" << modality_name(out.factors.modality)
      << " expectation=" << expectation_name(out.factors.expectation);

  std::optional<Category> chosen;
  for (Category candidate : {Category::Concurrent, Category::Directive, Category::Terminating}) {
    if (trigger_allows(*trigger, candidate) && factors_allow(out.factors, candidate)) {
      chosen = candidate;
      break;
    }
  }
  if (!chosen) return finish_no_intervention(din.str());

  std::vector<ActionCode> eligible;
  for (ActionCode code : codes_in(*chosen))
    if (!ctx.code_eligible || ctx.code_eligible(code)) eligible.push_back(code);
  if (eligible.empty()) return finish_no_intervention(din.str() + " no_eligible_action");

  out.category = *chosen;
  out.code = select_code_among(eligible, *chosen, *trigger, out.factors, policy_, rng_);
  trace_.steps.push_back({boundary, 'd', din.str(), category_name(*chosen)});
  categories_.insert(*chosen);
  codes_.insert(*out.code);

  if (*chosen == Category::Terminating) {
    terminated_ = true;
  } else {
    // Priorities reshuffle after stepping in; re-entering hands-off must pass
    // through at least one observation boundary.
    observe_gate_ = true;
    importance_ = sample_importance();
  }
  trace_.loops = detect_loops(trace_.steps);
  return out;
}

void UserSim::close_boundary(int boundary, bool agent_finished, bool task_changed) {
  if (terminated_) return;
  trace_.steps.push_back({boundary, 'e', "", agent_finished ? "yes" : "no"});
  if (!agent_finished)
    trace_.steps.push_back({boundary, 'f', "", task_changed ? "yes" : "no"});
  trace_.loops = detect_loops(trace_.steps);
}

ActionCode select_code(Category category, Trigger trigger, const EnablingFactors& factors,
                       const SimPolicy& policy, Rng& rng) {
  if (!trigger_allows(trigger, category))
    throw Error(ErrorCode::IncompatiblePair, std::string("trigger ") + trigger_name(trigger) +
                                                 " cannot lead to " + category_name(category));
  return select_code_among(codes_in(category), category, trigger, factors, policy, rng);
}

ActionCode select_code_among(const std::vector<ActionCode>& eligible, Category category,
                             Trigger trigger, const EnablingFactors& factors,
                             const SimPolicy& policy, Rng& rng) {
  (void)factors;
  if (eligible.size() == 1) return eligible.front();
  auto among = [&](ActionCode code) {
    return std::find(eligible.begin(), eligible.end(), code) != eligible.end();
  };

  if (category == Category::Directive) {
    if (trigger == Trigger::EmergingNewTask && among(ActionCode::SwitchingTasks))
      return ActionCode::SwitchingTasks;
    if (trigger == Trigger::MisalignedInterpretation && among(ActionCode::InstructionBasedSteering))
      return ActionCode::InstructionBasedSteering;
  }

  std::vector<ActionCode> favored;
  switch (trigger) {
    case Trigger::FineGrainedDetailing:
    case Trigger::MisalignedInterpretation:
    case Trigger::QualityDrop:
      favored = {ActionCode::InSituCoEditing, ActionCode::DemonstrationBasedSteering};
      break;
    case Trigger::EarlyOutcomeVisibility:
      favored = {ActionCode::IntermediateResultAppropriation, ActionCode::ArtifactTakeover};
      break;
    default:
      break;
  }
  if (category == Category::Directive && trigger == Trigger::QualityDrop)
    favored = {ActionCode::InstructionBasedSteering};

  std::vector<double> weights;
  double total = 0.0;
  for (ActionCode code : eligible) {
    const bool is_favored = std::find(favored.begin(), favored.end(), code) != favored.end();
    const double w = is_favored ? policy.favor_weight : 1.0;
    weights.push_back(w);
    total += w;
  }
  double x = rng.uniform01() * total;
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    if (x < weights[i]) return eligible[i];
    x -= weights[i];
  }
  return eligible.back();
}

}  // namespace coact::sim
