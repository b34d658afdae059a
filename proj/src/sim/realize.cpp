#include "sim/realize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "agent/request.hpp"
#include "canvas/node.hpp"
#include "support/error.hpp"

namespace coact::sim {
namespace {

using agent::Plan;
using canvas::CanvasDocument;
using canvas::CanvasNode;
using canvas::Json;
using canvas::NodeId;
using canvas::ToolCall;

struct BoundItem {
  std::string key;
  NodeId id;
  const agent::GoalItem* item = nullptr;
};

// Bindings that still point at a live node, in goal-item order so selection
// is deterministic.
std::vector<BoundItem> bound_alive(const Plan& plan, const CanvasDocument& doc) {
  std::vector<BoundItem> out;
  for (const auto& item : plan.goal.items) {
    auto it = plan.bindings.find(item.key);
    if (it == plan.bindings.end() || !doc.contains(it->second)) continue;
    out.push_back({item.key, it->second, &item});
  }
  return out;
}

std::optional<BoundItem> first_top_level(const std::vector<BoundItem>& bound) {
  for (const auto& b : bound)
    if (b.item->parent == "@workspace") return b;
  return std::nullopt;
}

ToolCall user_call(std::string tool, Json params) {
  ToolCall call;
  call.tool = std::move(tool);
  call.params = std::move(params);
  call.actor = canvas::Actor::User;
  return call;
}

ActionEvent op_event(ToolCall call) {
  ActionEvent ev;
  ev.kind = ActionEvent::Kind::CanvasOp;
  ev.call = std::move(call);
  return ev;
}

ActionEvent input_event(std::string text) {
  ActionEvent ev;
  ev.kind = ActionEvent::Kind::AdditionalInput;
  ev.text = std::move(text);
  return ev;
}

// Grid cursor for the user's parallel work inside their own area.
std::pair<double, double> own_cursor(int own_count) {
  return {20.0 + 30.0 * (own_count % 8), 20.0 + 30.0 * (own_count / 8)};
}

// Where a cloned artifact lands in the user's area: a wider grid so copies
// don't pile on the note cursor.
std::pair<double, double> clone_cursor(int own_count) {
  return {140.0 + 40.0 * (own_count % 5), 40.0 + 60.0 * (own_count / 5)};
}

// Id the next create-style call will allocate, given how many nodes earlier
// calls in the same window have already created.
NodeId predicted_id(const CanvasDocument& doc, std::uint64_t already_created) {
  return std::to_string(std::stoull(doc.peek_next_id()) + already_created);
}

bool is_create_tool(const std::string& tool) { return tool.rfind("create_", 0) == 0; }

std::optional<NodeId> literal_node_param(const ToolCall& call) {
  if (!call.params.contains("node") || !call.params.at("node").is_string()) return std::nullopt;
  std::string node = call.params.at("node").get<std::string>();
  if (node.rfind("@pending:", 0) == 0) return std::nullopt;
  return node;
}

// ---- opportunistic takeover: finish a pending goal item yourself ----------

std::optional<NodeId> resolve_item_parent(const agent::GoalItem& item, const Plan& plan,
                                          const CanvasDocument& doc,
                                          const agent::AgentContext& areas) {
  if (item.parent == "@workspace") return areas.workspace;
  if (item.parent.rfind("@item:", 0) == 0) {
    auto it = plan.bindings.find(item.parent.substr(6));
    if (it == plan.bindings.end() || !doc.contains(it->second)) return std::nullopt;
    return it->second;
  }
  return doc.contains(item.parent) ? std::optional<NodeId>(item.parent) : std::nullopt;
}

const agent::GoalItem* pending_item(const Plan& plan, const CanvasDocument& doc,
                                    const agent::AgentContext& areas) {
  for (const auto& item : plan.goal.items) {
    if (plan.bindings.count(item.key) || plan.waived.count(item.key)) continue;
    if (!resolve_item_parent(item, plan, doc, areas)) continue;
    static const std::array<const char*, 4> kinds = {"frame", "rectangle", "text", "ellipse"};
    if (std::find(kinds.begin(), kinds.end(), item.kind) == kinds.end()) continue;
    return &item;
  }
  return nullptr;
}

const Json* eq_value(const agent::GoalItem& item, const std::string& key) {
  for (const auto& pred : item.predicates)
    if (pred.key == key && pred.op == agent::PredicateOp::Eq) return &pred.value;
  return nullptr;
}

ToolCall build_takeover_create(const agent::GoalItem& item, const NodeId& parent,
                               const CanvasDocument& doc, const agent::AgentContext& areas) {
  Json params{{"parent", parent}, {"name", item.name}};
  if (parent == areas.workspace) {
    std::size_t siblings = doc.contains(parent) ? doc.children(parent).size() : 0;
    params["x"] = Json(40.0);
    params["y"] = Json(40.0 + 340.0 * static_cast<double>(siblings));
  }
  auto copy_num = [&](const char* key) {
    if (const Json* v = eq_value(item, key); v && v->is_number()) params[key] = *v;
  };
  auto copy_fill = [&] {
    const Json* v = eq_value(item, "fill");
    if (v && v->is_object() && v->contains("rgba")) params["fill"] = v->at("rgba");
  };
  if (item.kind == "text") {
    const Json* text = eq_value(item, "text");
    params["text"] = (text && text->is_string()) ? *text : Json(item.name);
    copy_num("font_size");
    copy_fill();
    return user_call("create_text", std::move(params));
  }
  copy_num("width");
  copy_num("height");
  copy_fill();
  if (item.kind == "frame") {
    if (const Json* v = eq_value(item, "layout_mode"); v && v->is_string())
      params["layout_mode"] = *v;
    copy_num("item_spacing");
    if (const Json* v = eq_value(item, "padding"); v && v->is_object() && v->contains("top"))
      params["padding"] = v->at("top");
    return user_call("create_frame", std::move(params));
  }
  if (item.kind == "ellipse") return user_call("create_ellipse", std::move(params));
  copy_num("corner_radius");
  return user_call("create_rectangle", std::move(params));
}

// ---- demonstration: redo one of the agent's edits your own way ------------

// Rewrites one property call into the user's counter-version. Returns nullopt
// for tools we don't demonstrate over.
std::optional<ToolCall> counter_call(const ToolCall& original, const NodeId& node) {
  const Json& p = original.params;
  auto num = [&](const char* key, double fallback) {
    return (p.contains(key) && p.at(key).is_number()) ? p.at(key).get<double>() : fallback;
  };
  if (original.tool == "set_item_spacing")
    return user_call("set_item_spacing",
                     {{"node", node}, {"spacing", Json(num("spacing", 8.0) * 3.0)}});
  if (original.tool == "set_fill_color") {
    const auto& slate = agent::color_palette().at("slate");
    double r = num("r", 0.0), g = num("g", 0.0), b = num("b", 0.0);
    // Counter with a visibly different color even when the batch already
    // painted slate.
    const auto& alt = agent::color_palette().at("teal");
    bool is_slate = std::abs(r - slate[0]) + std::abs(g - slate[1]) + std::abs(b - slate[2]) < 1e-9;
    const auto& c = is_slate ? alt : slate;
    return user_call("set_fill_color",
                     {{"node", node}, {"r", Json(c[0])}, {"g", Json(c[1])}, {"b", Json(c[2])}});
  }
  if (original.tool == "set_corner_radius")
    return user_call("set_corner_radius",
                     {{"node", node}, {"radius", Json(num("radius", 0.0) + 8.0)}});
  if (original.tool == "resize_node")
    return user_call("resize_node", {{"node", node},
                                     {"width", Json(num("width", 100.0) * 1.25)},
                                     {"height", Json(num("height", 100.0) * 1.25)}});
  if (original.tool == "set_text_properties" && p.contains("font_size") &&
      p.at("font_size").is_number())
    return user_call("set_text_properties",
                     {{"node", node}, {"font_size", Json(p.at("font_size").get<double>() * 1.25)}});
  if (original.tool == "set_layout_mode") {
    std::string mode = (p.contains("mode") && p.at("mode").is_string())
                           ? p.at("mode").get<std::string>()
                           : "vertical";
    std::string flipped = mode == "horizontal" ? "vertical" : "horizontal";
    return user_call("set_layout_mode", {{"node", node}, {"mode", flipped}});
  }
  if (original.tool == "set_padding")
    return user_call("set_padding", {{"node", node}, {"all", Json(num("all", num("top", 8.0)) + 8.0)}});
  if (original.tool == "set_opacity")
    return user_call("set_opacity", {{"node", node}, {"opacity", Json(0.8)}});
  return std::nullopt;
}

std::vector<ActionEvent> realize_demonstration(const CanvasDocument& doc, const RealizeContext& ctx) {
  static const std::vector<ToolCall> kNoBatch;
  const std::vector<ToolCall>& batch = ctx.batch ? *ctx.batch : kNoBatch;
  // Prefer overriding a property call aimed at a node that already exists.
  for (std::size_t i = 0; i < batch.size(); ++i) {
    auto node = literal_node_param(batch[i]);
    if (!node || !doc.contains(*node)) continue;
    if (auto counter = counter_call(batch[i], *node)) {
      ActionEvent ev = op_event(std::move(*counter));
      ev.in_window = true;
      ev.after_call_index = static_cast<int>(i) + 1;
      return {std::move(ev)};
    }
  }
  // Otherwise restyle the first node the batch creates, right after it lands.
  std::uint64_t created_before = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!is_create_tool(batch[i].tool)) continue;
    NodeId target = predicted_id(doc, created_before);
    const auto& slate = agent::color_palette().at("slate");
    ActionEvent ev = op_event(user_call("set_fill_color", {{"node", target},
                                                           {"r", Json(slate[0])},
                                                           {"g", Json(slate[1])},
                                                           {"b", Json(slate[2])}}));
    ev.in_window = true;
    ev.after_call_index = static_cast<int>(i) + 1;
    return {std::move(ev)};
  }
  return {};  // empty batch: nothing to demonstrate over this window
}

// ---- in-situ co-editing: quietly fix or polish alongside the batch --------

std::optional<ToolCall> plan_value_call(const agent::PropPredicate& pred, const NodeId& node) {
  if (pred.key == "fill") {
    if (!pred.value.is_object() || !pred.value.contains("rgba")) return std::nullopt;
    const Json& rgba = pred.value.at("rgba");
    if (!rgba.is_array() || rgba.size() < 3) return std::nullopt;
    return user_call("set_fill_color",
                     {{"node", node}, {"r", rgba.at(0)}, {"g", rgba.at(1)}, {"b", rgba.at(2)}});
  }
  if (pred.key == "text" && pred.value.is_string())
    return user_call("set_text_content", {{"node", node}, {"text", pred.value}});
  if (!pred.value.is_number()) return std::nullopt;
  if (pred.key == "corner_radius")
    return user_call("set_corner_radius", {{"node", node}, {"radius", pred.value}});
  if (pred.key == "item_spacing")
    return user_call("set_item_spacing", {{"node", node}, {"spacing", pred.value}});
  if (pred.key == "opacity") return user_call("set_opacity", {{"node", node}, {"opacity", pred.value}});
  if (pred.key == "font_size")
    return user_call("set_text_properties", {{"node", node}, {"font_size", pred.value}});
  return std::nullopt;
}

std::vector<ActionEvent> realize_in_situ(const CanvasDocument& doc, const RealizeContext& ctx) {
  const Plan& plan = *ctx.plan;
  auto bound = bound_alive(plan, doc);
  if (bound.empty()) return {};
  static const std::vector<ToolCall> kNoBatch;
  const std::vector<ToolCall>& batch = ctx.batch ? *ctx.batch : kNoBatch;
  // (node, tool) pairs the batch already covers; editing those would collide.
  std::vector<std::pair<NodeId, std::string>> covered;
  for (const auto& call : batch)
    if (auto node = literal_node_param(call)) covered.emplace_back(*node, call.tool);
  auto taken = [&](const NodeId& node, const std::string& tool) {
    return std::find(covered.begin(), covered.end(), std::make_pair(node, tool)) != covered.end();
  };
  int index = batch.empty() ? 0 : 1;
  // First choice: land one of the plan's own unmet property targets.
  for (const auto& b : bound) {
    const CanvasNode& node = doc.at(b.id);
    for (const auto& pred : b.item->predicates) {
      if (pred.op != agent::PredicateOp::Eq || predicate_holds(pred, node)) continue;
      auto call = plan_value_call(pred, b.id);
      if (!call || taken(b.id, call->tool)) continue;
      ActionEvent ev = op_event(std::move(*call));
      ev.in_window = true;
      ev.after_call_index = index;
      return {std::move(ev)};
    }
  }
  // Fallback: a cosmetic nudge on the first bound node the batch leaves alone.
  for (const auto& b : bound) {
    if (taken(b.id, "set_opacity")) continue;
    ActionEvent ev = op_event(user_call("set_opacity", {{"node", b.id}, {"opacity", Json(0.97)}}));
    ev.in_window = true;
    ev.after_call_index = index;
    return {std::move(ev)};
  }
  return {};
}

// ---- instruction-based steering: one sentence at the boundary -------------

std::string pick_instruction(const BoundItem& target, const CanvasDocument& doc, Rng& rng) {
  const CanvasNode& node = doc.at(target.id);
  std::string ref = agent::ref_for_id(target.id);
  static const std::array<const char*, 3> colors = {"slate", "teal", "orange"};
  if (node.kind == canvas::NodeKind::Frame) {
    switch (rng.below(3)) {
      case 0: return agent::format_spacing(ref, 24);
      case 1: return agent::format_recolor(ref, colors[rng.below(colors.size())]);
      default: return agent::format_round_corners(ref, 12);
    }
  }
  if (node.kind == canvas::NodeKind::Text)
    return agent::format_recolor(ref, colors[rng.below(colors.size())]);
  return rng.below(2) == 0 ? agent::format_recolor(ref, colors[rng.below(colors.size())])
                           : agent::format_round_corners(ref, 12);
}

}  // namespace

bool code_needs_window(ActionCode code) {
  switch (code) {
    case ActionCode::DemonstrationBasedSteering:
    case ActionCode::InSituCoEditing:
    case ActionCode::ExecutionTermination:
      return true;
    default:
      return false;
  }
}

bool code_eligible(ActionCode code, const CanvasDocument& doc, const RealizeContext& ctx) {
  const Plan& plan = *ctx.plan;
  switch (code) {
    case ActionCode::FullDelegation:
    case ActionCode::ObservationalMonitoring:
    case ActionCode::ExecutionTermination:
    case ActionCode::SwitchingTasks:
      return true;
    case ActionCode::InstructionBasedSteering:
    case ActionCode::InSituCoEditing:
      return !bound_alive(plan, doc).empty();
    case ActionCode::DemonstrationBasedSteering:
      return !plan.goal.empty();
    case ActionCode::IntermediateResultAppropriation: {
      for (const auto& b : bound_alive(plan, doc))
        if (b.item->parent != "@workspace") return true;
      return false;
    }
    case ActionCode::ArtifactTakeover:
      return first_top_level(bound_alive(plan, doc)).has_value();
    case ActionCode::OpportunisticTakeover:
      return pending_item(plan, doc, ctx.areas) != nullptr;
  }
  return false;
}

std::vector<ActionEvent> realize_actions(ActionCode code, const CanvasDocument& doc,
                                         const RealizeContext& ctx, Rng& rng) {
  const Plan& plan = *ctx.plan;
  switch (code) {
    case ActionCode::ObservationalMonitoring: {
      ActionEvent ev;
      ev.kind = ActionEvent::Kind::Attention;
      return {std::move(ev)};
    }

    case ActionCode::FullDelegation: {
      auto [x, y] = own_cursor(ctx.own_count);
      std::string name = "own-note-" + std::to_string(ctx.own_count + 1);
      Json params{{"parent", ctx.areas.user_area},
                  {"name", name},
                  {"x", Json(x)},
                  {"y", Json(y)},
                  {"width", Json(80.0)},
                  {"height", Json(24.0)},
                  {"fill", Json::array({0.85, 0.85, 0.88})}};
      return {op_event(user_call("create_rectangle", std::move(params)))};
    }

    case ActionCode::ExecutionTermination: {
      ActionEvent ev;
      ev.kind = ActionEvent::Kind::Terminate;
      ev.in_window = true;
      std::size_t n = ctx.batch ? ctx.batch->size() : 0;
      ev.after_call_index = static_cast<int>((n + 1) / 2);
      return {std::move(ev)};
    }

    case ActionCode::InstructionBasedSteering: {
      auto bound = bound_alive(plan, doc);
      if (bound.empty()) throw Error(ErrorCode::NoEligibleTarget, "no live agent-built node to steer");
      BoundItem target = first_top_level(bound).value_or(bound.front());
      return {input_event(pick_instruction(target, doc, rng))};
    }

    case ActionCode::SwitchingTasks: {
      std::string name =
          ctx.next_section_name.empty() ? ctx.next_section_type + " section" : ctx.next_section_name;
      return {input_event(
          agent::format_create_section(ctx.next_section_type, name, ctx.next_section_cards))};
    }

    case ActionCode::IntermediateResultAppropriation: {
      for (const auto& b : bound_alive(plan, doc)) {
        if (b.item->parent == "@workspace") continue;
        auto [x, y] = clone_cursor(ctx.own_count);
        return {op_event(user_call("clone_node", {{"node", b.id},
                                                  {"parent", ctx.areas.user_area},
                                                  {"x", Json(x)},
                                                  {"y", Json(y)}}))};
      }
      throw Error(ErrorCode::NoEligibleTarget, "no intermediate piece to take");
    }

    case ActionCode::ArtifactTakeover: {
      auto top = first_top_level(bound_alive(plan, doc));
      if (!top) throw Error(ErrorCode::NoEligibleTarget, "no finished artifact to take over");
      auto [x, y] = clone_cursor(ctx.own_count);
      NodeId clone_root = doc.peek_next_id();
      std::string fork_name = doc.at(top->id).name() + " (fork)";
      const auto& slate = agent::color_palette().at("slate");
      std::vector<ActionEvent> out;
      out.push_back(op_event(user_call("clone_node", {{"node", top->id},
                                                      {"parent", ctx.areas.user_area},
                                                      {"x", Json(x)},
                                                      {"y", Json(y)}})));
      out.push_back(op_event(user_call("rename_node", {{"node", clone_root}, {"name", fork_name}})));
      out.push_back(op_event(user_call("set_fill_color", {{"node", clone_root},
                                                          {"r", Json(slate[0])},
                                                          {"g", Json(slate[1])},
                                                          {"b", Json(slate[2])}})));
      return out;
    }

    case ActionCode::OpportunisticTakeover: {
      const agent::GoalItem* item = pending_item(plan, doc, ctx.areas);
      if (!item) throw Error(ErrorCode::NoEligibleTarget, "no pending element to finish");
      NodeId parent = resolve_item_parent(*item, plan, doc, ctx.areas).value();
      return {op_event(build_takeover_create(*item, parent, doc, ctx.areas))};
    }

    case ActionCode::InSituCoEditing:
      return realize_in_situ(doc, ctx);

    case ActionCode::DemonstrationBasedSteering:
      return realize_demonstration(doc, ctx);
  }
  return {};
}

}  // namespace coact::sim
