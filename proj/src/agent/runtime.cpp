#include "agent/runtime.hpp"

#include <algorithm>
#include <sstream>

#include "canvas/diff.hpp"
#include "canvas/serialize.hpp"
#include "support/error.hpp"

namespace coact::agent {

namespace cprop = canvas::prop;

// ---------------------------------------------------------------------------
// Plan serialization and narrative
// ---------------------------------------------------------------------------

Json Plan::to_json() const {
  Json bindings_j = Json::object();
  for (const auto& [key, id] : bindings) bindings_j[key] = id;
  Json waived_j = Json::array();
  for (const auto& key : waived) waived_j.push_back(key);
  return Json{{"goal", goal.to_json()},
              {"bindings", std::move(bindings_j)},
              {"waived", std::move(waived_j)},
              {"version", version},
              {"text", text}};
}

Plan Plan::from_json(const Json& j) {
  Plan plan;
  plan.goal = GoalSpec::from_json(j.at("goal"));
  for (const auto& [key, id] : j.value("bindings", Json::object()).items())
    plan.bindings[key] = id.get<std::string>();
  for (const auto& key : j.value("waived", Json::array())) plan.waived.insert(key.get<std::string>());
  plan.version = j.value("version", std::uint64_t{1});
  plan.text = j.value("text", "");
  return plan;
}

std::string Plan::canonical() const { return to_json().dump(); }

namespace {

std::string node_desc(const canvas::CanvasDocument* doc, const NodeId& id) {
  if (doc && doc->contains(id)) return "(id: " + id + ", name: '" + doc->at(id).name() + "')";
  return "(id: " + id + ")";
}

std::string item_name_for_key(const GoalSpec& goal, const std::string& key) {
  for (const auto& item : goal.items)
    if (item.key == key) return item.name;
  return key;
}

}  // namespace

std::string render_plan_text(const Plan& plan, const canvas::CanvasDocument* doc) {
  std::ostringstream os;
  os << "Plan v" << plan.version << ": " << plan.goal.summary << "\n";
  for (const auto& item : plan.goal.items) {
    if (plan.waived.count(item.key)) {
      os << "- (left to you) " << item.kind << " '" << item.name << "'\n";
      continue;
    }
    std::string where;
    if (item.parent == "@workspace")
      where = "the workspace";
    else if (item.parent.rfind("@item:", 0) == 0)
      where = "'" + item_name_for_key(plan.goal, item.parent.substr(6)) + "'";
    else
      where = node_desc(doc, item.parent);
    os << "- create " << item.kind << " '" << item.name << "' in " << where;
    auto bound = plan.bindings.find(item.key);
    if (bound != plan.bindings.end()) os << " [done: " << bound->second << "]";
    os << "\n";
  }
  for (const auto& edit : plan.goal.edits) {
    os << "- ensure " << edit.predicate.key << " "
       << (edit.predicate.op == PredicateOp::Eq ? "=" : ">=") << " " << edit.predicate.value.dump()
       << " on " << node_desc(doc, edit.node);
    if (edit.predicate.user_directed) os << " [your instruction]";
    if (edit.predicate.user_observed) os << " [following your change]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Attribution
// ---------------------------------------------------------------------------

Json AttributionReport::to_json() const {
  Json overrides_j = Json::array();
  for (const auto& d : overrides) {
    Json e{{"node", d.node}, {"key", d.key}};
    e["expected"] = d.before ? *d.before : Json(nullptr);
    e["observed"] = d.after ? *d.after : Json(nullptr);
    overrides_j.push_back(std::move(e));
  }
  return Json{{"agent", agent.to_json()}, {"user", user.to_json()}, {"overrides", std::move(overrides_j)}};
}

AttributionReport attribute_changes(const canvas::CanvasSnapshot& before,
                                    const canvas::CanvasSnapshot& after,
                                    const canvas::ChangeSet& expected) {
  if (before.lineage != after.lineage)
    throw Error(ErrorCode::LineageMismatch, "attribution window spans two different documents");

  AttributionReport report;
  report.agent = expected;
  report.agent.normalize();

  // Everything the executed calls do not explain is the user's work — by
  // construction: before + agent + user lands exactly on `after`.
  canvas::CanvasSnapshot mid = canvas::apply_changeset(before, report.agent);
  report.user = canvas::diff_nodes(mid.nodes, after.nodes);

  // Flag the places where the user countermanded the agent inside the window.
  std::set<std::pair<NodeId, std::string>> agent_props;
  for (const auto& d : report.agent.modified) agent_props.insert({d.node, d.key});
  for (const auto& [id, spec] : report.agent.created)
    for (const auto& [key, value] : spec.props) agent_props.insert({id, key});
  std::set<NodeId> agent_positioned;
  for (const auto& mv : report.agent.moved) agent_positioned.insert(mv.node);
  for (const auto& [id, spec] : report.agent.created) agent_positioned.insert(id);

  for (auto& d : report.user.modified) {
    if (agent_props.count({d.node, d.key})) {
      d.override_marker = true;
      report.overrides.push_back(d);
    }
  }
  for (const auto& id : report.user.deleted) {
    bool agent_touched = report.agent.created.count(id) != 0;
    if (!agent_touched)
      for (const auto& [node, key] : agent_props)
        if (node == id) {
          agent_touched = true;
          break;
        }
    if (agent_touched) {
      canvas::PropDelta d;
      d.node = id;
      d.key = "@node";
      auto it = report.agent.created.find(id);
      d.before = it != report.agent.created.end() ? canvas::node_to_json(it->second) : Json(true);
      d.override_marker = true;
      report.overrides.push_back(std::move(d));
    }
  }
  for (const auto& mv : report.user.moved) {
    if (agent_positioned.count(mv.node)) {
      canvas::PropDelta d;
      d.node = mv.node;
      d.key = "@position";
      d.before = Json{{"parent", mv.before_parent}, {"index", mv.before_index}};
      d.after = Json{{"parent", mv.after_parent}, {"index", mv.after_index}};
      d.override_marker = true;
      report.overrides.push_back(std::move(d));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Goal checking
// ---------------------------------------------------------------------------

namespace {

struct GoalTally {
  int satisfied = 0;
  int total = 0;
};

GoalTally tally_goal(const Plan& plan, const canvas::CanvasDocument& doc) {
  GoalTally t;
  for (const auto& item : plan.goal.items) {
    ++t.total;
    if (plan.waived.count(item.key)) {
      ++t.satisfied;  // deliberately handed over, not pending
      continue;
    }
    auto bound = plan.bindings.find(item.key);
    if (bound == plan.bindings.end() || !doc.contains(bound->second)) continue;
    const canvas::CanvasNode& node = doc.at(bound->second);
    bool all = true;
    for (const auto& pred : item.predicates)
      if (!predicate_holds(pred, node)) {
        all = false;
        break;
      }
    if (all) ++t.satisfied;
  }
  for (const auto& edit : plan.goal.edits) {
    ++t.total;
    if (!doc.contains(edit.node)) {
      ++t.satisfied;  // target vanished; nothing left to enforce
      continue;
    }
    if (predicate_holds(edit.predicate, doc.at(edit.node))) ++t.satisfied;
  }
  return t;
}

}  // namespace

bool goal_satisfied(const Plan& plan, const canvas::CanvasDocument& doc) {
  GoalTally t = tally_goal(plan, doc);
  return t.satisfied == t.total;
}

double goal_progress(const Plan& plan, const canvas::CanvasDocument& doc) {
  GoalTally t = tally_goal(plan, doc);
  return t.total == 0 ? 1.0 : static_cast<double>(t.satisfied) / static_cast<double>(t.total);
}

// ---------------------------------------------------------------------------
// Request resolution and edit goals
// ---------------------------------------------------------------------------

std::optional<NodeId> resolve_ref(const canvas::CanvasDocument& doc, const std::string& ref) {
  if (ref.empty()) return std::nullopt;
  if (ref[0] == '#') {
    NodeId id = ref.substr(1);
    if (doc.contains(id)) return id;
    return std::nullopt;
  }
  if (ref.size() >= 2 && ref.front() == '\'' && ref.back() == '\'') {
    std::string name = ref.substr(1, ref.size() - 2);
    for (const auto& [id, node] : doc.nodes())
      if (node.name() == name) return id;
  }
  return std::nullopt;
}

namespace {

Json solid_fill(double r, double g, double b) {
  return Json{{"type", "solid"}, {"rgba", Json::array({r, g, b, 1.0})}};
}

PropPredicate make_pred(const char* key, PredicateOp op, Json value, bool user_directed) {
  PropPredicate p;
  p.key = key;
  p.op = op;
  p.value = std::move(value);
  p.user_directed = user_directed;
  return p;
}

// Edit-goal construction shared by initial planning and mid-turn input
// merging. Returns an empty goal when the request cannot apply to `target`.
GoalSpec make_edit_goal(const std::string& form, const Json& args, const NodeId& target,
                        const canvas::CanvasDocument& doc, bool user_directed) {
  GoalSpec goal;
  goal.form = form;
  const canvas::CanvasNode& node = doc.at(target);
  std::string desc = "(id: " + target + ", name: '" + node.name() + "')";

  if (form == "recolor") {
    std::string color = args.at("color").get<std::string>();
    const auto& rgb = color_palette().at(color);
    goal.summary = "recolor " + desc + " to " + color;
    goal.edits.push_back(
        {target, make_pred(cprop::kFill, PredicateOp::Eq, solid_fill(rgb[0], rgb[1], rgb[2]), user_directed)});
  } else if (form == "enlarge") {
    double w = std::max(1.0, node.num(cprop::kWidth, 1.0));
    double h = std::max(1.0, node.num(cprop::kHeight, 1.0));
    goal.summary = "enlarge " + desc + " by 1.5x";
    goal.edits.push_back({target, make_pred(cprop::kWidth, PredicateOp::Gte, Json(w * 1.5), user_directed)});
    goal.edits.push_back({target, make_pred(cprop::kHeight, PredicateOp::Gte, Json(h * 1.5), user_directed)});
  } else if (form == "round_corners") {
    double px = args.at("px").get<double>();
    goal.summary = "round corners of " + desc + " to " + std::to_string(static_cast<int>(px)) + "px";
    goal.edits.push_back({target, make_pred(cprop::kCornerRadius, PredicateOp::Eq, Json(px), user_directed)});
  } else if (form == "dark_theme") {
    goal.summary = "apply the dark theme to " + desc;
    goal.edits.push_back(
        {target, make_pred(cprop::kFill, PredicateOp::Eq, solid_fill(0.09, 0.1, 0.12), user_directed)});
    for (const auto& id : doc.subtree(target)) {
      if (id == target) continue;
      if (doc.at(id).kind == canvas::NodeKind::Text)
        goal.edits.push_back(
            {id, make_pred(cprop::kFill, PredicateOp::Eq, solid_fill(0.95, 0.96, 0.97), user_directed)});
    }
  } else if (form == "arrange") {
    if (node.kind != canvas::NodeKind::Frame) return goal;  // empty: cannot arrange a non-frame
    std::string dir = args.at("direction").get<std::string>();
    goal.summary = "arrange " + desc + " " + (dir == "horizontal" ? "horizontally" : "vertically");
    goal.edits.push_back({target, make_pred(cprop::kLayoutMode, PredicateOp::Eq, Json(dir), user_directed)});
  } else if (form == "spacing") {
    if (node.kind != canvas::NodeKind::Frame) return goal;
    double px = args.at("px").get<double>();
    goal.summary = "space items in " + desc + " by " + std::to_string(static_cast<int>(px)) + "px";
    if (!node.is_auto_layout())
      goal.edits.push_back(
          {target, make_pred(cprop::kLayoutMode, PredicateOp::Eq, Json("horizontal"), user_directed)});
    goal.edits.push_back({target, make_pred(cprop::kItemSpacing, PredicateOp::Eq, Json(px), user_directed)});
  }
  return goal;
}

}  // namespace

// ---------------------------------------------------------------------------
// generate_plan
// ---------------------------------------------------------------------------

AgentRuntime::AgentRuntime(canvas::CanvasDocument& doc, AgentContext ctx, ReasonerFn reasoner)
    : doc_(doc), ctx_(std::move(ctx)), reasoner_(reasoner ? std::move(reasoner) : reference_reasoner) {}

PlanResult AgentRuntime::generate_plan(const std::string& request_text,
                                       std::optional<NodeId> selection) const {
  PlanResult out;
  UserRequest req = parse_request(request_text);
  if (!req.action) {
    out.note = "no actionable request";
    return out;
  }

  Plan plan;
  if (req.form == "create_section") {
    std::string type = req.args.at("section_type").get<std::string>();
    std::string spoken = type;
    std::replace(spoken.begin(), spoken.end(), '_', ' ');
    std::string name = req.args.value("name", spoken + " section");
    int cards = req.args.value("cards", 4);
    plan.goal = section_goal(type, name, cards);
    if (plan.goal.items.empty()) {
      out.note = "unrecognized section type";
      return out;
    }
  } else {
    std::optional<NodeId> target;
    if (req.form == "enlarge") {
      if (selection && doc_.contains(*selection)) target = selection;
      if (!target) {
        out.note = "nothing is selected to enlarge";
        return out;
      }
    } else {
      target = resolve_ref(doc_, req.args.value("target_ref", ""));
      if (!target) {
        out.note = "could not find the referenced element";
        return out;
      }
    }
    plan.goal = make_edit_goal(req.form, req.args, *target, doc_, false);
    if (plan.goal.empty()) {
      out.note = "that request does not apply to the referenced element";
      return out;
    }
  }

  plan.version = 1;
  plan.text = render_plan_text(plan, &doc_);
  out.is_action_needed = true;
  out.plan = std::move(plan);
  return out;
}

// ---------------------------------------------------------------------------
// update_plan
// ---------------------------------------------------------------------------

Plan update_plan(const Plan& plan, const AttributionReport& report,
                 const std::optional<std::string>& additional_input, const canvas::CanvasDocument& doc,
                 const AgentContext* areas) {
  Plan out = plan;
  bool changed = false;

  // 0. The user may build a planned element themselves. A user-created node
  //    matching a pending item's kind, name, and parent claims that item:
  //    bind it so references resolve, waive it so the agent doesn't build a
  //    duplicate.
  for (const auto& [id, node] : report.user.created) {
    if (!doc.contains(id)) continue;
    for (const auto& item : out.goal.items) {
      if (out.bindings.count(item.key) || out.waived.count(item.key)) continue;
      auto kind = canvas::kind_from_name(item.kind);
      if (!kind || node.kind != *kind || node.name() != item.name) continue;
      std::optional<NodeId> want_parent;
      if (item.parent == "@workspace") {
        if (!areas) continue;
        want_parent = areas->workspace;
      } else if (item.parent.rfind("@item:", 0) == 0) {
        auto bound = out.bindings.find(item.parent.substr(6));
        if (bound == out.bindings.end()) continue;
        want_parent = bound->second;
      } else {
        want_parent = item.parent;
      }
      if (!node.parent || !want_parent || *node.parent != *want_parent) continue;
      out.bindings[item.key] = id;
      out.waived.insert(item.key);
      changed = true;
      break;
    }
  }

  // 1. Waive goal items whose realized nodes the user removed — the agent
  //    does not fight a deletion. Waiving cascades to dependent children.
  if (!report.user.deleted.empty()) {
    std::set<std::string> to_waive;
    for (const auto& [key, id] : out.bindings)
      if (report.user.deleted.count(id) && !out.waived.count(key)) to_waive.insert(key);
    bool grew = !to_waive.empty();
    while (grew) {
      grew = false;
      for (const auto& item : out.goal.items) {
        if (to_waive.count(item.key) || out.waived.count(item.key)) continue;
        if (item.parent.rfind("@item:", 0) == 0 && to_waive.count(item.parent.substr(6))) {
          to_waive.insert(item.key);
          grew = true;
        }
      }
    }
    for (const auto& key : to_waive) {
      out.waived.insert(key);
      changed = true;
    }
  }

  // 2. A user-made value wins over a planned one: rewrite exactly the
  //    conflicting predicate to what the user chose. Predicates the user
  //    explicitly dictated earlier stay as they are.
  auto rewrite = [&](PropPredicate& pred, const canvas::PropDelta& delta) {
    if (pred.user_directed) return;
    if (delta.after) {
      if (pred.value == *delta.after && pred.op == PredicateOp::Eq) return;
      pred.value = *delta.after;
      pred.op = PredicateOp::Eq;
      pred.user_observed = true;
      changed = true;
    }
  };
  auto scan_delta = [&](const canvas::PropDelta& delta) {
    for (auto& item : out.goal.items) {
      if (out.waived.count(item.key)) continue;
      auto bound = out.bindings.find(item.key);
      if (bound == out.bindings.end() || bound->second != delta.node) continue;
      for (auto& pred : item.predicates)
        if (pred.key == delta.key) rewrite(pred, delta);
    }
    for (auto& edit : out.goal.edits)
      if (edit.node == delta.node && edit.predicate.key == delta.key) rewrite(edit.predicate, delta);
  };
  for (const auto& delta : report.user.modified) scan_delta(delta);
  for (const auto& delta : report.overrides)
    if (delta.key != "@node" && delta.key != "@position") scan_delta(delta);

  // 3. Mid-turn input. A style instruction folds into the current goal; a
  //    fresh build request replaces it — the user moved the task.
  if (additional_input) {
    UserRequest req = parse_request(*additional_input);
    if (req.action) {
      if (req.form == "create_section") {
        std::string type = req.args.at("section_type").get<std::string>();
        std::string spoken = type;
        std::replace(spoken.begin(), spoken.end(), '_', ' ');
        std::string name = req.args.value("name", spoken + " section");
        GoalSpec fresh = section_goal(type, name, req.args.value("cards", 4));
        if (!fresh.items.empty()) {
          out.goal = std::move(fresh);
          out.bindings.clear();
          out.waived.clear();
          changed = true;
        }
      } else if (req.form != "enlarge") {  // enlargement needs a live selection; not available mid-turn
        auto target = resolve_ref(doc, req.args.value("target_ref", ""));
        if (target) {
          GoalSpec extra = make_edit_goal(req.form, req.args, *target, doc, true);
          if (!extra.empty()) {
            for (const auto& new_edit : extra.edits) {
              auto it = std::find_if(out.goal.edits.begin(), out.goal.edits.end(), [&](const GoalEdit& e) {
                return e.node == new_edit.node && e.predicate.key == new_edit.predicate.key;
              });
              if (it == out.goal.edits.end())
                out.goal.edits.push_back(new_edit);
              else
                it->predicate = new_edit.predicate;
            }
            out.goal.summary += "; " + extra.summary;
            changed = true;
          }
        }
      }
    }
  }

  if (changed) {
    ++out.version;
    out.text = render_plan_text(out, &doc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// evaluate_feedback
// ---------------------------------------------------------------------------

FeedbackNote evaluate_feedback(const std::vector<canvas::ToolCall>& issued,
                               const std::vector<bool>& call_ok, const AttributionReport& report,
                               const Plan& plan, bool turn_complete) {
  FeedbackNote note;

  std::vector<std::string> failed;
  for (std::size_t i = 0; i < issued.size() && i < call_ok.size(); ++i)
    if (!call_ok[i] && std::find(failed.begin(), failed.end(), issued[i].tool) == failed.end())
      failed.push_back(issued[i].tool);
  if (!failed.empty()) {
    note.present = true;
    note.category = "tool_failure";
    std::string names;
    for (const auto& name : failed) names += (names.empty() ? "" : ", ") + name;
    note.message = "My edits did not go through (" + names + "); the canvas is unchanged on my side.";
    return note;
  }

  if (turn_complete) {
    note.present = true;
    note.category = "completion";
    note.message = "Done: " + plan.goal.summary;
    if (!plan.waived.empty())
      note.message += " (left " + std::to_string(plan.waived.size()) + " element(s) to you)";
    return note;
  }

  if (!report.overrides.empty()) {
    note.present = true;
    note.category = "override_ack";
    note.message = "Keeping your " + std::to_string(report.overrides.size()) +
                   " adjustment(s); I have updated the plan around them.";
    return note;
  }

  return note;
}

// ---------------------------------------------------------------------------
// run_turn
// ---------------------------------------------------------------------------

const char* turn_status_name(TurnStatus status) {
  switch (status) {
    case TurnStatus::Completed: return "completed";
    case TurnStatus::Terminated: return "terminated";
    case TurnStatus::NoProgress: return "no_progress";
    case TurnStatus::IterationCap: return "iteration_cap";
    case TurnStatus::NoAction: return "no_action";
  }
  return "unknown";
}

namespace {

void resolve_pending_parents(canvas::ToolCall& call, const std::map<std::string, NodeId>& realized) {
  if (!call.params.contains("parent") || !call.params.at("parent").is_string()) return;
  std::string parent = call.params.at("parent").get<std::string>();
  if (parent.rfind("@pending:", 0) != 0) return;
  auto it = realized.find(parent.substr(9));
  // an unrealized placeholder degenerates to a missing node and fails loudly
  call.params["parent"] = it != realized.end() ? it->second : NodeId("999999");
}

}  // namespace

TurnResult AgentRuntime::run_turn(Plan plan, TurnDriver& driver, const TurnConfig& config,
                                  const OpSink& sink) {
  TurnResult result;
  result.status = TurnStatus::IterationCap;

  std::set<std::pair<NodeId, std::string>> user_touched;
  std::set<NodeId> user_deleted;
  int empty_streak = 0;

  auto note_user_change = [&](const canvas::ChangeSet& change) {
    for (const auto& d : change.modified) user_touched.insert({d.node, d.key});
    for (const auto& [id, node] : change.created)
      for (const auto& [key, value] : node.props) user_touched.insert({id, key});
    for (const auto& id : change.deleted) user_deleted.insert(id);
  };

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    BoundaryEvents events = driver.at_boundary(iteration, plan);

    // User activity between windows: applied first, outside the attribution
    // window, but still folded into what the agent must respect.
    canvas::ChangeSet boundary_user;
    for (const auto& user_call : events.user_calls) {
      canvas::ToolCall call = user_call;
      call.actor = canvas::Actor::User;
      canvas::ToolResult r = doc_.apply(call);
      if (r.ok) boundary_user.merge(r.change);
      if (sink) sink(OpRecord{call, r, iteration, false});
    }
    note_user_change(boundary_user);
    result.turn_user_changes.merge(boundary_user);

    Plan entering = plan;
    if (!boundary_user.empty() || events.additional_input) {
      AttributionReport boundary_report;
      boundary_report.user = boundary_user;
      plan = update_plan(plan, boundary_report, events.additional_input, doc_, &ctx_);
    }

    if (events.terminate) {
      result.status = TurnStatus::Terminated;
      break;
    }

    ReasonerInput rin{doc_, plan, ctx_, user_touched, user_deleted,
                      iteration, events.quality, config.batch_limit};
    ReasonerOutput rout = reasoner_ ? reasoner_(rin) : reference_reasoner(rin);

    IterationRecord record;
    record.iteration = iteration;
    record.reasoner_note = rout.note;
    record.plan_before = entering.to_json();

    canvas::CanvasSnapshot before = doc_.snapshot();
    canvas::ChangeSet expected;
    std::vector<std::string> window_inputs;
    bool terminated_in_window = false;

    {
      std::vector<WindowInjection> injections = driver.plan_window(iteration, rout.calls, plan);
      std::stable_sort(injections.begin(), injections.end(),
                       [](const WindowInjection& a, const WindowInjection& b) {
                         return a.after_call_index < b.after_call_index;
                       });
      std::map<std::string, NodeId> realized;  // item key -> id, this window

      std::size_t inj_idx = 0;
      for (std::size_t j = 0; j <= rout.calls.size(); ++j) {
        for (; inj_idx < injections.size() &&
               injections[inj_idx].after_call_index <= static_cast<int>(j);
             ++inj_idx) {
          const WindowInjection& inj = injections[inj_idx];
          for (const auto& user_call : inj.user_calls) {
            canvas::ToolCall call = user_call;
            call.actor = canvas::Actor::User;
            canvas::ToolResult r = doc_.apply(call);
            if (sink) sink(OpRecord{call, r, iteration, true});
          }
          if (inj.additional_input) window_inputs.push_back(*inj.additional_input);
          if (inj.terminate) terminated_in_window = true;
        }
        if (terminated_in_window) break;  // remaining agent calls are abandoned
        if (j == rout.calls.size()) break;

        canvas::ToolCall call = rout.calls[j];
        call.actor = canvas::Actor::Agent;
        resolve_pending_parents(call, realized);
        canvas::ToolResult r = doc_.apply(call);
        if (r.ok) {
          expected.merge(r.change);
          auto item_it = rout.creates_item.find(static_cast<int>(j));
          if (item_it != rout.creates_item.end() && !r.created_ids.empty()) {
            realized[item_it->second] = r.created_ids.front();
            plan.bindings[item_it->second] = r.created_ids.front();
          }
        }
        record.agent_calls.push_back(call);
        record.call_ok.push_back(r.ok);
        if (sink) sink(OpRecord{call, r, iteration, true});
      }
    }

    canvas::CanvasSnapshot after = doc_.snapshot();
    record.attribution = attribute_changes(before, after, expected);
    note_user_change(record.attribution.user);
    result.turn_agent_changes.merge(record.attribution.agent);
    result.turn_user_changes.merge(record.attribution.user);

    for (const auto& input : window_inputs)
      plan = update_plan(plan, record.attribution, input, doc_, &ctx_);
    if (window_inputs.empty())
      plan = update_plan(plan, record.attribution, std::nullopt, doc_, &ctx_);

    bool turn_complete = goal_satisfied(plan, doc_);
    record.feedback =
        evaluate_feedback(record.agent_calls, record.call_ok, record.attribution, plan, turn_complete);
    record.plan_after = plan.to_json();
    record.plan_changed = entering.canonical() != plan.canonical();
    record.terminated_in_window = terminated_in_window;

    result.records.push_back(std::move(record));
    result.iterations = iteration;

    if (terminated_in_window) {
      result.status = TurnStatus::Terminated;
      break;
    }
    if (turn_complete) {
      result.status = TurnStatus::Completed;
      break;
    }
    if (result.records.back().attribution.agent.empty())
      ++empty_streak;
    else
      empty_streak = 0;
    if (empty_streak >= 2) {
      result.status = TurnStatus::NoProgress;
      break;
    }
  }

  result.final_plan = std::move(plan);
  return result;
}

}  // namespace coact::agent
