#include "session/orchestrator.hpp"

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <utility>

#include "agent/request.hpp"
#include "agent/runtime.hpp"
#include "canvas/serialize.hpp"
#include "sim/decision.hpp"
#include "sim/realize.hpp"
#include "support/error.hpp"
#include "support/rng.hpp"

namespace coact::session {
namespace {

using agent::AgentContext;
using agent::AgentRuntime;
using agent::BoundaryEvents;
using agent::Plan;
using agent::QualityMode;
using agent::WindowInjection;
using canvas::CanvasDocument;
using canvas::NodeId;
using canvas::ToolCall;
using sim::ActionCode;
using sim::ActionEvent;
using sim::Category;
using sim::RealizeContext;

// Builds the log line by line, owning the tick clock. Canvas ops and signals
// each occupy one tick; bookkeeping events share the current tick.
class LogWriter {
 public:
  explicit LogWriter(SessionLog& log) : log_(log) {}

  std::int64_t tick() const { return tick_; }

  void op(int turn, const agent::OpRecord& rec) {
    Json ev{{"type", "op"},
            {"tick", ++tick_},
            {"turn", turn},
            {"iteration", rec.iteration},
            {"window", rec.in_window},
            {"actor", canvas::actor_name(rec.call.actor)},
            {"tool", rec.call.tool},
            {"params", rec.call.params},
            {"ok", rec.result.ok}};
    if (!rec.result.ok && rec.result.error)
      ev["error"] = canvas::tool_error_name(*rec.result.error);
    log_.events.push_back(std::move(ev));
  }

  void raw_op(int turn, int iteration, const ToolCall& call, const canvas::ToolResult& result) {
    agent::OpRecord rec{call, result, iteration, false};
    op(turn, rec);
  }

  void signal(int turn, const std::string& kind, std::optional<int> iteration = std::nullopt,
              const std::string& text = {}) {
    Json ev{{"type", "signal"}, {"tick", ++tick_}, {"turn", turn}, {"kind", kind}};
    if (iteration) ev["iteration"] = *iteration;
    if (!text.empty()) ev["text"] = text;
    log_.events.push_back(std::move(ev));
  }

  void decision(int turn, int boundary, const sim::BoundaryDecision& d) {
    Json ev{{"type", "decision"},
            {"tick", tick_},
            {"turn", turn},
            {"boundary", boundary},
            {"category", std::string(1, sim::category_letter(d.category))},
            {"no_intervention", d.no_intervention},
            {"factors",
             Json{{"mental_model", sim::mental_model_name(d.factors.mental_model)},
                  {"importance", sim::importance_name(d.factors.importance)},
                  {"modality", sim::modality_name(d.factors.modality)},
                  {"expectation", sim::expectation_name(d.factors.expectation)}}}};
    ev["code"] = d.code ? Json(sim::code_name(*d.code)) : Json(nullptr);
    ev["trigger"] = d.trigger ? Json(sim::trigger_name(*d.trigger)) : Json(nullptr);
    log_.events.push_back(std::move(ev));
  }

  void event(Json ev) {
    ev["tick"] = tick_;
    log_.events.push_back(std::move(ev));
  }

 private:
  SessionLog& log_;
  std::int64_t tick_ = 0;
};

std::string spoken_section(std::string type) {
  if (type == "two_column") return "two-column";
  if (type == "three_column") return "three-column";
  if (type == "card_grid") return "card grid";
  return type;
}

constexpr std::array<const char*, 4> kIdeaTypes = {"card_grid", "two_column", "hero", "footer"};

// Bridges the decision walk and the action realizer into the agent's
// TurnDriver seam. One instance lives for the whole session; per-turn state
// is reset by start_turn.
class SimDriver : public agent::TurnDriver {
 public:
  SimDriver(CanvasDocument& doc, const AgentContext& areas, const sim::SimPolicy& policy,
            Rng realize_rng, LogWriter& writer)
      : doc_(doc), areas_(areas), policy_(policy), realize_rng_(std::move(realize_rng)), writer_(writer) {}

  void start_turn(int turn_no, std::uint64_t turn_seed, const ScriptRequest& req) {
    sim_ = std::make_unique<sim::UserSim>(policy_, Rng(turn_seed));
    turn_no_ = turn_no;
    sloppy_.clear();
    sloppy_.insert(req.sloppy_iterations.begin(), req.sloppy_iterations.end());
    sloppy_issued_ = false;
    switched_prev_ = false;
    misalignment_reacted_ = false;
    pending_window_code_.reset();
    last_boundary_ = 0;
    intent_type_.clear();
    intent_name_.clear();
    intent_cards_ = 4;
    if (!req.intent.empty()) {
      agent::UserRequest ireq = agent::parse_request(req.intent);
      if (ireq.action && ireq.form == "create_section") {
        intent_type_ = ireq.args.at("section_type").get<std::string>();
        intent_name_ = ireq.args.value("name", spoken_section(intent_type_) + " section");
        intent_cards_ = ireq.args.value("cards", 4);
      }
    }
  }

  void finish_turn(const agent::TurnResult& result) {
    if (sim_ && !sim_->terminated() && last_boundary_ > 0)
      sim_->close_boundary(last_boundary_, true, false);
    (void)result;
  }

  const sim::UserSim& sim() const { return *sim_; }

  BoundaryEvents at_boundary(int iteration, const Plan& plan) override {
    if (iteration > 1) {
      sim_->close_boundary(iteration - 1, false, switched_prev_);
      switched_prev_ = false;
    }

    sim::WalkContext wc;
    wc.misalignment = !misalignment_reacted_ && !plan_matches_intent(plan);
    wc.quality_violation = sloppy_issued_;
    wc.agent_wrapping_up = agent::goal_satisfied(plan, doc_);
    wc.code_eligible = [this, &plan](ActionCode code) {
      return sim::code_eligible(code, doc_, make_rc(plan));
    };

    sim::BoundaryDecision d = sim_->at_boundary(iteration, wc);
    last_boundary_ = iteration;
    writer_.decision(turn_no_, iteration, d);
    if (d.trigger && *d.trigger == sim::Trigger::MisalignedInterpretation) misalignment_reacted_ = true;

    BoundaryEvents ev;
    ev.quality = sloppy_.count(iteration) ? QualityMode::Sloppy : QualityMode::Normal;
    sloppy_issued_ = ev.quality == QualityMode::Sloppy;

    if (d.category != Category::HandsOff) {
      ev.attention = true;
      writer_.signal(turn_no_, "attention", iteration);
    }

    if (d.category == Category::HandsOff) {
      for (auto& realized : sim::realize_actions(ActionCode::FullDelegation, doc_, make_rc(plan),
                                                 realize_rng_))
        if (realized.kind == ActionEvent::Kind::CanvasOp) ev.user_calls.push_back(realized.call);
      ++own_count_;
      return ev;
    }

    if (!d.code) return ev;

    if (sim::code_needs_window(*d.code)) {
      pending_window_code_ = *d.code;
      return ev;
    }

    bool used_idea = false;
    for (auto& realized : sim::realize_actions(*d.code, doc_, make_rc(plan), realize_rng_)) {
      switch (realized.kind) {
        case ActionEvent::Kind::CanvasOp:
          ev.user_calls.push_back(realized.call);
          break;
        case ActionEvent::Kind::AdditionalInput:
          ev.additional_input = realized.text;
          writer_.signal(turn_no_, "additional_input", iteration, realized.text);
          break;
        case ActionEvent::Kind::Attention:
        case ActionEvent::Kind::Terminate:
          break;  // attention already marked; no boundary code terminates
      }
    }
    if (*d.code == ActionCode::SwitchingTasks) {
      switched_prev_ = true;
      used_idea = intent_type_.empty();
      if (!intent_type_.empty()) misalignment_reacted_ = true;
    }
    if (*d.code == ActionCode::IntermediateResultAppropriation ||
        *d.code == ActionCode::ArtifactTakeover || *d.code == ActionCode::OpportunisticTakeover)
      ++own_count_;
    if (used_idea) ++idea_serial_;
    return ev;
  }

  std::vector<WindowInjection> plan_window(int iteration, const std::vector<ToolCall>& batch,
                                           const Plan& plan) override {
    (void)iteration;
    if (!pending_window_code_) return {};
    ActionCode code = *pending_window_code_;
    pending_window_code_.reset();
    RealizeContext rc = make_rc(plan);
    rc.batch = &batch;
    std::vector<WindowInjection> out;
    for (auto& realized : sim::realize_actions(code, doc_, rc, realize_rng_)) {
      WindowInjection inj;
      inj.after_call_index = realized.after_call_index;
      switch (realized.kind) {
        case ActionEvent::Kind::CanvasOp:
          inj.user_calls.push_back(realized.call);
          break;
        case ActionEvent::Kind::Terminate:
          inj.terminate = true;
          break;
        case ActionEvent::Kind::AdditionalInput:
          inj.additional_input = realized.text;
          break;
        case ActionEvent::Kind::Attention:
          continue;
      }
      out.push_back(std::move(inj));
    }
    return out;
  }

 private:
  RealizeContext make_rc(const Plan& plan) const {
    RealizeContext rc;
    rc.plan = &plan;
    rc.areas = areas_;
    rc.own_count = own_count_;
    if (!intent_type_.empty()) {
      rc.next_section_type = intent_type_;
      rc.next_section_name = intent_name_;
      rc.next_section_cards = intent_cards_;
    } else {
      rc.next_section_type = kIdeaTypes[idea_serial_ % kIdeaTypes.size()];
      rc.next_section_name = "idea " + std::to_string(idea_serial_ + 1);
      rc.next_section_cards = 4;
    }
    return rc;
  }

  bool plan_matches_intent(const Plan& plan) const {
    if (intent_type_.empty()) return true;
    if (plan.goal.form != "create_section") return false;
    std::string prefix = "build " + spoken_section(intent_type_) + " section";
    return plan.goal.summary.rfind(prefix, 0) == 0;
  }

  CanvasDocument& doc_;
  const AgentContext& areas_;
  const sim::SimPolicy& policy_;
  Rng realize_rng_;
  LogWriter& writer_;

  std::unique_ptr<sim::UserSim> sim_;
  int turn_no_ = 0;
  int own_count_ = 0;
  int idea_serial_ = 0;
  std::set<int> sloppy_;
  bool sloppy_issued_ = false;
  bool switched_prev_ = false;
  bool misalignment_reacted_ = false;
  std::optional<ActionCode> pending_window_code_;
  int last_boundary_ = 0;
  std::string intent_type_;
  std::string intent_name_;
  int intent_cards_ = 4;
};

Json categories_json(const std::set<Category>& categories) {
  Json arr = Json::array();
  for (Category c : sim::kAllCategories)
    if (categories.count(c)) arr.push_back(std::string(1, sim::category_letter(c)));
  return arr;
}

Json codes_json(const std::set<ActionCode>& codes) {
  Json arr = Json::array();
  for (ActionCode code : codes) arr.push_back(sim::code_name(code));
  return arr;
}

Json loops_json(const std::set<char>& loops) {
  Json arr = Json::array();
  for (char l : loops) arr.push_back(std::string(1, l));
  return arr;
}

}  // namespace

SessionOutcome run_session(const SessionConfig& config, int session_index) {
  config.validate();
  std::uint64_t session_seed = Rng::derive(config.seed, static_cast<std::uint64_t>(session_index));

  SessionScript script;
  if (config.script_file.empty()) {
    ScriptOptions opts;
    opts.min_requests = config.min_requests;
    opts.max_requests = config.max_requests;
    opts.misalignment_rate = config.misalignment_rate;
    opts.quality_rate = config.quality_rate;
    script = generate_script(Rng::derive(session_seed, 1), opts);
  } else {
    script = SessionScript::load(config.script_file);
  }

  CanvasDocument doc("session-" + std::to_string(session_index));

  SessionOutcome outcome;
  outcome.log.header = Json{{"format", kLogFormat},
                            {"config_hash", hex64(config.config_hash())},
                            {"seed", session_seed},
                            {"base_seed", config.seed},
                            {"session", session_index},
                            {"lineage", doc.lineage()}};
  LogWriter writer(outcome.log);

  // The user lays out the shared page: one area the agent works in, one for
  // their own material.
  AgentContext areas;
  {
    ToolCall make_ws;
    make_ws.tool = "create_frame";
    make_ws.actor = canvas::Actor::User;
    make_ws.params = Json{{"parent", doc.root()}, {"top_level", true},
                          {"name", "canvas_area"}, {"x", 0.0},
                          {"y", 0.0},              {"width", 1440.0},
                          {"height", 3200.0}};
    canvas::ToolResult r = doc.apply(make_ws);
    writer.raw_op(0, 0, make_ws, r);
    if (!r.ok || r.created_ids.empty())
      throw Error(ErrorCode::Io, "workspace setup failed: " + r.error_message);
    areas.workspace = r.created_ids.front();

    ToolCall make_own = make_ws;
    make_own.params["name"] = "user_area";
    make_own.params["x"] = 1500.0;
    make_own.params["width"] = 900.0;
    r = doc.apply(make_own);
    writer.raw_op(0, 0, make_own, r);
    if (!r.ok || r.created_ids.empty())
      throw Error(ErrorCode::Io, "user area setup failed: " + r.error_message);
    areas.user_area = r.created_ids.front();
  }
  writer.event(Json{{"type", "setup"}, {"workspace", areas.workspace}, {"user_area", areas.user_area}});

  AgentRuntime runtime(doc, areas);
  SimDriver driver(doc, areas, config.policy, Rng(Rng::derive(session_seed, 3)), writer);
  std::uint64_t turn_seed_base = Rng::derive(session_seed, 2);

  int turn_count = static_cast<int>(script.requests.size());
  if (turn_count > config.turn_budget) turn_count = config.turn_budget;

  for (int turn = 1; turn <= turn_count; ++turn) {
    const ScriptRequest& req = script.requests[static_cast<std::size_t>(turn - 1)];
    writer.signal(turn, "request", std::nullopt, req.text);

    agent::PlanResult plan_res = runtime.generate_plan(req.text);
    writer.event(Json{{"type", "turn_start"},
                      {"turn", turn},
                      {"request", req.text},
                      {"actionable", plan_res.is_action_needed}});

    if (!plan_res.is_action_needed) {
      // Nothing for the agent to do; the user simply carries on alone.
      writer.event(Json{{"type", "turn_end"},
                        {"turn", turn},
                        {"status", "no_action"},
                        {"iterations", 0},
                        {"categories", Json::array({"H"})},
                        {"codes", Json::array()},
                        {"loops", Json::array()},
                        {"note", plan_res.note}});
      ++outcome.turns;
      continue;
    }

    driver.start_turn(turn, Rng::derive(turn_seed_base, static_cast<std::uint64_t>(turn)), req);
    agent::OpSink sink = [&](const agent::OpRecord& rec) { writer.op(turn, rec); };
    agent::TurnConfig turn_config;
    turn_config.batch_limit = config.batch_limit;
    agent::TurnResult result = runtime.run_turn(plan_res.plan, driver, turn_config, sink);
    driver.finish_turn(result);

    if (result.status == agent::TurnStatus::Terminated)
      writer.signal(turn, "terminate", result.iterations);

    const sim::UserSim& sim = driver.sim();
    writer.event(Json{{"type", "trace"}, {"turn", turn}, {"trace", sim.trace().to_json()}});
    writer.event(Json{{"type", "turn_end"},
                      {"turn", turn},
                      {"status", agent::turn_status_name(result.status)},
                      {"iterations", result.iterations},
                      {"categories", categories_json(sim.categories())},
                      {"codes", codes_json(sim.codes())},
                      {"loops", loops_json(sim.trace().loops)}});
    ++outcome.turns;
  }

  writer.event(Json{{"type", "final_canvas"},
                    {"revision", doc.revision()},
                    {"snapshot", canvas::snapshot_to_json(doc.snapshot())}});
  return outcome;
}

canvas::CanvasSnapshot replay(const SessionLog& log) {
  CanvasDocument doc(log.header.value("lineage", "doc"));
  for (const Json& ev : log.events) {
    if (ev.value("type", std::string()) != "op") continue;
    ToolCall call;
    try {
      call.tool = ev.at("tool").get<std::string>();
      call.params = ev.value("params", Json::object());
      auto actor = canvas::actor_from_name(ev.value("actor", "agent"));
      call.actor = actor.value_or(canvas::Actor::Agent);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::CorruptLog, std::string("malformed op event: ") + e.what());
    }
    doc.apply(call);  // a recorded failure fails identically on replay
  }
  return doc.snapshot();
}

bool verify_replay(const SessionLog& log, std::string* why) {
  const Json* final_event = log.final_canvas();
  if (!final_event) throw Error(ErrorCode::CorruptLog, "log has no final_canvas event");
  canvas::CanvasSnapshot logged;
  try {
    logged = canvas::snapshot_from_json(final_event->at("snapshot"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::CorruptLog, std::string("malformed final canvas: ") + e.what());
  }
  canvas::CanvasSnapshot replayed = replay(log);
  std::string got = canvas::canonical_canvas_json(replayed);
  std::string want = canvas::canonical_canvas_json(logged);
  if (got != want) {
    if (why) *why = "replayed canvas differs from logged final canvas";
    return false;
  }
  return true;
}

}  // namespace coact::session
