#include "analysis/annotate.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "agent/request.hpp"
#include "canvas/document.hpp"
#include "support/error.hpp"

namespace coact::analysis {

namespace {

int event_turn(const Json& ev) {
  return ev.contains("turn") ? ev.at("turn").get<int>() : -1;
}

}  // namespace

std::vector<TurnEvents> segment_turns(const session::SessionLog& log) {
  std::map<int, TurnEvents> by_turn;
  for (const auto& ev : log.events) {
    if (!ev.is_object() || !ev.contains("type")) {
      throw Error(ErrorCode::CorruptLog, "event without type");
    }
    const std::string type = ev.at("type").get<std::string>();
    const int turn = event_turn(ev);
    if (type == "turn_start") {
      auto& t = by_turn[turn];
      t.turn = turn;
      t.request = ev.value("request", std::string{});
    } else if (type == "turn_end") {
      auto& t = by_turn[turn];
      t.turn = turn;
      t.status = ev.value("status", std::string{});
      t.iterations = ev.value("iterations", 0);
      t.turn_end = ev;
    } else if (type == "op") {
      if (turn >= 1) by_turn[turn].ops.push_back(ev);
    } else if (type == "signal") {
      if (turn >= 1) by_turn[turn].signals.push_back(ev);
    } else if (type == "decision") {
      if (turn >= 1) by_turn[turn].decisions.push_back(ev);
    } else if (type == "trace") {
      if (turn >= 1) by_turn[turn].trace = ev;
    }
  }
  std::vector<TurnEvents> out;
  for (auto& [turn, t] : by_turn) {
    if (turn < 1) continue;
    if (t.turn_end.is_null()) {
      throw Error(ErrorCode::CorruptLog, "turn " + std::to_string(turn) + " has no turn_end");
    }
    out.push_back(std::move(t));
  }
  return out;
}

Json TurnAnnotation::to_json() const {
  Json cats = Json::array();
  for (char c : categories) cats.push_back(std::string(1, c));
  Json loop_j = Json::array();
  for (char c : loops) loop_j.push_back(std::string(1, c));
  return Json{{"turn", turn},
              {"categories", cats},
              {"codes", codes},
              {"loops", loop_j},
              {"triggers", triggers},
              {"ground_truth", ground_truth},
              {"low_confidence", low_confidence}};
}

TurnAnnotation annotate_ground_truth(const TurnEvents& turn) {
  TurnAnnotation a;
  a.turn = turn.turn;
  a.ground_truth = true;
  const Json& end = turn.turn_end;
  for (const auto& c : end.value("categories", Json::array())) {
    const std::string s = c.get<std::string>();
    if (!s.empty()) a.categories.insert(s[0]);
  }
  for (const auto& c : end.value("codes", Json::array())) {
    a.codes.insert(c.get<std::string>());
  }
  for (const auto& c : end.value("loops", Json::array())) {
    const std::string s = c.get<std::string>();
    if (!s.empty()) a.loops.insert(s[0]);
  }
  // Loops are recomputed from the trace rather than trusted, when present.
  if (turn.trace.is_object() && turn.trace.contains("trace")) {
    auto trace = sim::DecisionTrace::from_json(turn.trace.at("trace"));
    a.loops = sim::detect_loops(trace.steps);
  }
  for (const auto& d : turn.decisions) {
    if (d.contains("trigger") && !d.at("trigger").is_null()) {
      a.triggers.insert(d.at("trigger").get<std::string>());
    }
  }
  return a;
}

namespace {

// Which top-level area a node sits under: the agent's shared canvas, the
// user's own scratch area, or anywhere else.
enum class Area { Workspace, Own, Other };

struct RuleCoder {
  canvas::CanvasDocument doc;
  canvas::NodeId workspace;
  canvas::NodeId user_area;
  std::map<int, TurnAnnotation> turns;

  // Per-window memory for spotting user edits that answer agent activity.
  int win_turn = -1;
  int win_iteration = -1;
  std::set<canvas::NodeId> agent_created_window;
  std::set<std::pair<canvas::NodeId, std::string>> agent_pairs_window;

  // Roots the user cloned this turn; follow-up edits on them belong to the
  // clone's code, not to own-area work.
  int clone_turn = -1;
  std::set<canvas::NodeId> user_clone_roots;

  explicit RuleCoder(const std::string& lineage) : doc(lineage) {}

  Area area_of(const canvas::NodeId& id) const {
    canvas::NodeId cur = id;
    while (doc.contains(cur)) {
      if (cur == workspace) return Area::Workspace;
      if (cur == user_area) return Area::Own;
      const auto& n = doc.at(cur);
      if (!n.parent) break;
      cur = *n.parent;
    }
    return Area::Other;
  }

  TurnAnnotation& turn(int t) {
    auto& a = turns[t];
    a.turn = t;
    return a;
  }

  void reset_window(int t, int iteration) {
    if (t == win_turn && iteration == win_iteration) return;
    win_turn = t;
    win_iteration = iteration;
    agent_created_window.clear();
    agent_pairs_window.clear();
  }

  std::set<canvas::NodeId>& clone_roots(int t) {
    if (t != clone_turn) {
      clone_turn = t;
      user_clone_roots.clear();
    }
    return user_clone_roots;
  }

  void on_op(const Json& ev) {
    const int t = event_turn(ev);
    const std::string actor = ev.value("actor", std::string{});
    const std::string tool = ev.value("tool", std::string{});
    const Json params = ev.value("params", Json::object());
    const bool window = ev.value("window", false);
    const int iteration = ev.value("iteration", 0);
    const bool recorded_ok = ev.value("ok", false);

    // Facts that must be read before the op mutates the document.
    std::optional<canvas::NodeId> target;
    if (params.contains("node") && params.at("node").is_string()) {
      target = params.at("node").get<std::string>();
    }
    std::optional<canvas::NodeId> parent;
    if (params.contains("parent") && params.at("parent").is_string()) {
      parent = params.at("parent").get<std::string>();
    }
    const Area target_area = target ? area_of(*target) : Area::Other;
    const Area parent_area = parent ? area_of(*parent) : Area::Other;
    bool clone_from_top_level = false;
    if (tool == "clone_node" && target && doc.contains(*target)) {
      const auto& src = doc.at(*target);
      clone_from_top_level = src.parent && *src.parent == workspace;
    }

    canvas::ToolCall call;
    call.tool = tool;
    call.params = params;
    call.actor = canvas::actor_from_name(actor).value_or(canvas::Actor::User);
    auto result = doc.apply(call);
    if (result.ok != recorded_ok) {
      throw Error(ErrorCode::LedgerGap,
                  "replayed outcome diverges from ledger at tick " +
                      std::to_string(ev.value("tick", 0)));
    }
    if (t < 1 || !result.ok) return;

    if (actor != "user") {
      if (window) {
        reset_window(t, iteration);
        for (const auto& id : result.created_ids) agent_created_window.insert(id);
        if (target) agent_pairs_window.insert({*target, tool});
      }
      return;
    }

    TurnAnnotation& a = turn(t);
    auto& clones = clone_roots(t);
    if (target && clones.count(*target)) return;  // continuation of a clone move

    const bool is_create = tool.rfind("create_", 0) == 0;
    if (window) {
      reset_window(t, iteration);
      const bool answers_agent =
          (target && agent_created_window.count(*target)) ||
          (target && agent_pairs_window.count({*target, tool}));
      if (answers_agent) {
        a.categories.insert('C');
        a.codes.insert("demonstration_based_steering");
      } else {
        a.categories.insert('C');
        a.codes.insert("in_situ_co_editing");
      }
      return;
    }

    if (tool == "clone_node" && target_area == Area::Workspace) {
      a.categories.insert('C');
      a.codes.insert(clone_from_top_level ? "artifact_takeover"
                                          : "intermediate_result_appropriation");
      for (const auto& id : result.created_ids) clones.insert(id);
      return;
    }
    if (is_create && parent_area == Area::Workspace) {
      a.categories.insert('C');
      a.codes.insert("opportunistic_takeover");
      return;
    }
    if ((is_create && parent_area == Area::Own) ||
        (target && target_area == Area::Own)) {
      a.categories.insert('H');
      a.codes.insert("full_delegation");
      return;
    }
    // A boundary edit inside the shared canvas without window context: the
    // closest reading is co-editing, flagged as a guess.
    a.categories.insert('C');
    a.codes.insert("in_situ_co_editing");
    a.low_confidence = true;
  }

  void on_signal(const Json& ev) {
    const int t = event_turn(ev);
    if (t < 1) return;
    const std::string kind = ev.value("kind", std::string{});
    if (kind == "attention") {
      TurnAnnotation& a = turn(t);
      a.categories.insert('O');
      a.codes.insert("observational_monitoring");
    } else if (kind == "additional_input") {
      TurnAnnotation& a = turn(t);
      a.categories.insert('D');
      auto req = agent::parse_request(ev.value("text", std::string{}));
      a.codes.insert(req.action && req.form == "create_section"
                         ? "switching_tasks"
                         : "instruction_based_steering");
    } else if (kind == "terminate") {
      TurnAnnotation& a = turn(t);
      a.categories.insert('T');
      a.codes.insert("execution_termination");
    }
  }
};

}  // namespace

std::vector<TurnAnnotation> annotate_rule_based(const session::SessionLog& log) {
  RuleCoder coder(log.header.value("lineage", std::string{}));
  std::vector<int> started;
  for (const auto& ev : log.events) {
    const std::string type = ev.value("type", std::string{});
    if (type == "setup") {
      coder.workspace = ev.value("workspace", std::string{});
      coder.user_area = ev.value("user_area", std::string{});
    } else if (type == "op") {
      coder.on_op(ev);
    } else if (type == "signal") {
      coder.on_signal(ev);
    } else if (type == "turn_start") {
      started.push_back(event_turn(ev));
    }
  }
  std::vector<TurnAnnotation> out;
  for (int t : started) {
    TurnAnnotation a = coder.turns.count(t) ? coder.turns.at(t) : TurnAnnotation{};
    a.turn = t;
    if (a.categories.empty()) a.categories.insert('H');  // never engaged: full delegation
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<TurnAnnotation> annotate(const session::SessionLog& log) {
  auto turns = segment_turns(log);
  if (turns.empty()) throw Error(ErrorCode::EmptyCorpus, "log contains no turns");
  const bool has_records =
      std::all_of(turns.begin(), turns.end(),
                  [](const TurnEvents& t) { return t.turn_end.is_object(); });
  if (has_records) {
    std::vector<TurnAnnotation> out;
    out.reserve(turns.size());
    for (const auto& t : turns) out.push_back(annotate_ground_truth(t));
    return out;
  }
  return annotate_rule_based(log);
}

Json Agreement::to_json() const {
  return Json{{"turns", turns},
              {"disagreements", disagreements},
              {"rate", rate()},
              {"causes", causes}};
}

Agreement coder_agreement(const session::SessionLog& log) {
  auto turns = segment_turns(log);
  auto rule = annotate_rule_based(log);
  std::map<int, const TurnAnnotation*> rule_by_turn;
  for (const auto& a : rule) rule_by_turn[a.turn] = &a;
  Agreement agg;
  for (const auto& t : turns) {
    auto gt = annotate_ground_truth(t);
    auto it = rule_by_turn.find(t.turn);
    if (it == rule_by_turn.end()) continue;
    ++agg.turns;
    const TurnAnnotation& rb = *it->second;
    if (gt.categories == rb.categories && gt.codes == rb.codes) continue;
    ++agg.disagreements;
    auto join_c = [](const std::set<char>& s) {
      std::string out;
      for (char c : s) out += c;
      return out.empty() ? std::string("-") : out;
    };
    auto join_s = [](const std::set<std::string>& s) {
      std::string out;
      for (const auto& x : s) {
        if (!out.empty()) out += ",";
        out += x;
      }
      return out.empty() ? std::string("-") : out;
    };
    agg.causes.push_back("turn " + std::to_string(t.turn) + ": recorded " +
                         join_c(gt.categories) + "/" + join_s(gt.codes) +
                         " vs coded " + join_c(rb.categories) + "/" +
                         join_s(rb.codes));
  }
  return agg;
}

}  // namespace coact::analysis
