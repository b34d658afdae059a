#include "agent/reasoner.hpp"

#include <algorithm>

namespace coact::agent {
namespace {

namespace cprop = canvas::prop;
using canvas::Json;
using canvas::ToolCall;

const char* quality_note(QualityMode q) {
  switch (q) {
    case QualityMode::Normal: return "";
    case QualityMode::Sloppy: return " (rushed pass)";
    case QualityMode::Inert: return " (stalled)";
  }
  return "";
}

bool uniform_padding(const Json& padding, double& out) {
  if (!padding.is_object()) return false;
  double t = padding.value("top", 0.0), r = padding.value("right", 0.0);
  double b = padding.value("bottom", 0.0), l = padding.value("left", 0.0);
  if (t == r && r == b && b == l) {
    out = t;
    return true;
  }
  return false;
}

// Keys a create call can satisfy directly, per node kind.
bool create_covers(const std::string& kind, const std::string& key, const Json& value) {
  if (key == cprop::kFill) return value.is_object() && value.value("type", "") == "solid";
  if (kind == "frame") {
    if (key == cprop::kPadding) {
      double ignored;
      return uniform_padding(value, ignored);
    }
    return key == cprop::kWidth || key == cprop::kHeight || key == cprop::kLayoutMode ||
           key == cprop::kItemSpacing;
  }
  if (kind == "rectangle")
    return key == cprop::kWidth || key == cprop::kHeight || key == cprop::kCornerRadius;
  if (kind == "text") return key == cprop::kText || key == cprop::kFontSize;
  if (kind == "ellipse" || kind == "polygon" || kind == "star")
    return key == cprop::kWidth || key == cprop::kHeight;
  return false;
}

Json fill_to_param(const Json& fill) { return fill.at("rgba"); }

ToolCall build_create_call(const GoalItem& item, const std::string& parent_ref,
                           std::optional<double> x, std::optional<double> y) {
  ToolCall call;
  call.actor = canvas::Actor::Agent;
  call.params["parent"] = parent_ref;
  call.params["name"] = item.name;
  if (x) call.params["x"] = *x;
  if (y) call.params["y"] = *y;

  auto pred_value = [&](const char* key) -> const Json* {
    for (const auto& p : item.predicates)
      if (p.key == key && p.op == PredicateOp::Eq) return &p.value;
    return nullptr;
  };

  if (item.kind == "frame") {
    call.tool = "create_frame";
    if (const Json* v = pred_value(cprop::kWidth)) call.params["width"] = *v;
    if (const Json* v = pred_value(cprop::kHeight)) call.params["height"] = *v;
    if (const Json* v = pred_value(cprop::kLayoutMode)) call.params["layout_mode"] = *v;
    if (const Json* v = pred_value(cprop::kItemSpacing)) call.params["item_spacing"] = *v;
    if (const Json* v = pred_value(cprop::kPadding)) {
      double all = 0.0;
      if (uniform_padding(*v, all)) call.params["padding"] = all;
    }
    if (const Json* v = pred_value(cprop::kFill))
      if (v->value("type", "") == "solid") call.params["fill"] = fill_to_param(*v);
  } else if (item.kind == "rectangle") {
    call.tool = "create_rectangle";
    if (const Json* v = pred_value(cprop::kWidth)) call.params["width"] = *v;
    if (const Json* v = pred_value(cprop::kHeight)) call.params["height"] = *v;
    if (const Json* v = pred_value(cprop::kCornerRadius)) call.params["corner_radius"] = *v;
    if (const Json* v = pred_value(cprop::kFill))
      if (v->value("type", "") == "solid") call.params["fill"] = fill_to_param(*v);
  } else if (item.kind == "text") {
    call.tool = "create_text";
    const Json* text = pred_value(cprop::kText);
    call.params["text"] = text ? *text : Json(item.name);
    if (const Json* v = pred_value(cprop::kFontSize)) call.params["font_size"] = *v;
    if (const Json* v = pred_value(cprop::kFill))
      if (v->value("type", "") == "solid") call.params["fill"] = fill_to_param(*v);
  } else if (item.kind == "ellipse") {
    call.tool = "create_ellipse";
    if (const Json* v = pred_value(cprop::kWidth)) call.params["width"] = *v;
    if (const Json* v = pred_value(cprop::kHeight)) call.params["height"] = *v;
    if (const Json* v = pred_value(cprop::kFill))
      if (v->value("type", "") == "solid") call.params["fill"] = fill_to_param(*v);
  } else {
    // remaining kinds carry no template predicates; make the simplest shape
    call.tool = "create_" + item.kind;
  }
  return call;
}

// Turns unmet predicates on one node into concrete calls. Width/height fold
// into a single resize; text properties fold into one call.
void append_property_calls(const canvas::CanvasDocument& doc, const NodeId& node,
                           const std::vector<const PropPredicate*>& preds, std::vector<ToolCall>& out) {
  if (!doc.contains(node)) return;
  const canvas::CanvasNode& cur = doc.at(node);

  auto make = [&](const char* tool) {
    ToolCall call;
    call.tool = tool;
    call.actor = canvas::Actor::Agent;
    call.params["node"] = node;
    return call;
  };

  const PropPredicate* width = nullptr;
  const PropPredicate* height = nullptr;
  std::map<std::string, const PropPredicate*> rest;  // ordered by key
  for (const auto* p : preds) {
    if (p->key == cprop::kWidth)
      width = p;
    else if (p->key == cprop::kHeight)
      height = p;
    else
      rest[p->key] = p;
  }

  if (width || height) {
    double w = width ? width->value.get<double>() : std::max(1.0, cur.num(cprop::kWidth, 1.0));
    double h = height ? height->value.get<double>() : std::max(1.0, cur.num(cprop::kHeight, 1.0));
    ToolCall call = make("resize_node");
    call.params["width"] = w;
    call.params["height"] = h;
    out.push_back(std::move(call));
  }

  // Text attribute predicates fold into one set_text_properties call.
  {
    ToolCall call = make("set_text_properties");
    bool any = false;
    for (const char* key : {cprop::kFontSize, cprop::kLineHeight, cprop::kLetterSpacing, cprop::kTextAlign}) {
      auto it = rest.find(key);
      if (it == rest.end()) continue;
      std::string param = key == cprop::kFontSize        ? "font_size"
                          : key == cprop::kLineHeight    ? "line_height"
                          : key == cprop::kLetterSpacing ? "letter_spacing"
                                                         : "text_align";
      call.params[param] = it->second->value;
      rest.erase(it);
      any = true;
    }
    if (any) out.push_back(std::move(call));
  }

  if (rest.count(cprop::kFontFamily) || rest.count(cprop::kFontStyle)) {
    ToolCall call = make("set_text_font");
    call.params["family"] = rest.count(cprop::kFontFamily) ? rest[cprop::kFontFamily]->value
                                                           : Json(cur.str(cprop::kFontFamily, "Inter"));
    call.params["style"] = rest.count(cprop::kFontStyle) ? rest[cprop::kFontStyle]->value
                                                         : Json(cur.str(cprop::kFontStyle, "Regular"));
    rest.erase(cprop::kFontFamily);
    rest.erase(cprop::kFontStyle);
    out.push_back(std::move(call));
  }

  for (const auto& [key, pred] : rest) {
    const Json& v = pred->value;
    if (key == cprop::kFill) {
      if (v.is_object() && v.value("type", "") == "solid") {
        ToolCall call = make("set_fill_color");
        const Json& rgba = v.at("rgba");
        call.params["r"] = rgba.at(0);
        call.params["g"] = rgba.at(1);
        call.params["b"] = rgba.at(2);
        call.params["a"] = rgba.size() > 3 ? rgba.at(3) : Json(1.0);
        out.push_back(std::move(call));
      } else if (v.is_object() && v.value("type", "") == "gradient") {
        ToolCall call = make("set_fill_gradient");
        call.params["gradient_type"] = v.at("gradient_type");
        call.params["stops"] = v.at("stops");
        out.push_back(std::move(call));
      }
    } else if (key == cprop::kCornerRadius) {
      ToolCall call = make("set_corner_radius");
      call.params["radius"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kOpacity) {
      ToolCall call = make("set_opacity");
      call.params["opacity"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kText) {
      ToolCall call = make("set_text_content");
      call.params["text"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kLayoutMode) {
      ToolCall call = make("set_layout_mode");
      call.params["mode"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kItemSpacing) {
      ToolCall call = make("set_item_spacing");
      call.params["spacing"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kPadding) {
      ToolCall call = make("set_padding");
      call.params["top"] = v.value("top", 0.0);
      call.params["right"] = v.value("right", 0.0);
      call.params["bottom"] = v.value("bottom", 0.0);
      call.params["left"] = v.value("left", 0.0);
      out.push_back(std::move(call));
    } else if (key == cprop::kAxisAlign) {
      ToolCall call = make("set_axis_align");
      if (v.contains("primary")) call.params["primary"] = v.at("primary");
      if (v.contains("counter")) call.params["counter"] = v.at("counter");
      out.push_back(std::move(call));
    } else if (key == cprop::kSizing) {
      ToolCall call = make("set_layout_sizing");
      if (v.contains("horizontal")) call.params["horizontal"] = v.at("horizontal");
      if (v.contains("vertical")) call.params["vertical"] = v.at("vertical");
      out.push_back(std::move(call));
    } else if (key == cprop::kRotation) {
      ToolCall call = make("rotate_node");
      call.params["degrees"] = v;
      out.push_back(std::move(call));
    } else if (key == cprop::kStroke) {
      ToolCall call = make("set_stroke");
      const Json& rgba = v.at("rgba");
      call.params["r"] = rgba.at(0);
      call.params["g"] = rgba.at(1);
      call.params["b"] = rgba.at(2);
      call.params["a"] = rgba.size() > 3 ? rgba.at(3) : Json(1.0);
      call.params["weight"] = v.value("weight", 1.0);
      call.params["align"] = v.value("align", "center");
      out.push_back(std::move(call));
    } else if (key == cprop::kName) {
      ToolCall call = make("rename_node");
      call.params["name"] = v;
      out.push_back(std::move(call));
    }
    // unknown keys stay unplanned; the predicate will simply never verify
  }
}

void degrade_param(Json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number()) return;
  params[key] = params.at(key).get<double>() * 0.75;
}

// A rushed pass lands structurally correct but visually wrong work: greyed
// colors, shrunken metrics, draft text. The next normal pass repairs it.
void degrade_call(ToolCall& call) {
  Json& p = call.params;
  if (p.contains("fill") && p.at("fill").is_array()) p["fill"] = Json::array({0.62, 0.62, 0.62, 1.0});
  if (p.contains("r") && p.contains("g") && p.contains("b")) {
    p["r"] = 0.62;
    p["g"] = 0.62;
    p["b"] = 0.62;
  }
  for (const char* key : {"width", "height", "font_size", "item_spacing", "radius", "spacing",
                          "padding", "top", "right", "bottom", "left", "degrees", "opacity"})
    degrade_param(p, key);
  if (p.contains("text") && p.at("text").is_string())
    p["text"] = p.at("text").get<std::string>() + " (draft)";
}

}  // namespace

ReasonerOutput reference_reasoner(const ReasonerInput& in) {
  ReasonerOutput out;

  if (in.quality == QualityMode::Inert) {
    // Stalled pass: calls that reference a node that is not there. They all
    // fail, the canvas stays put, and the feedback step reports it.
    for (int i = 0; i < 2; ++i) {
      ToolCall call;
      call.tool = "set_opacity";
      call.actor = canvas::Actor::Agent;
      call.params["node"] = "999999";
      call.params["opacity"] = 1.0;
      out.calls.push_back(std::move(call));
    }
    out.note = "continuing the plan" + std::string(quality_note(in.quality));
    return out;
  }

  const Plan& plan = in.plan;
  int budget = std::max(1, in.batch_limit);

  // Pass 1: bring missing goal items into existence, parents before children.
  std::set<std::string> scheduled;  // item keys whose create is in this batch
  int workspace_drops = 0;
  for (const auto& item : plan.goal.items) {
    if (static_cast<int>(out.calls.size()) >= budget) break;
    if (plan.waived.count(item.key)) continue;
    auto bound = plan.bindings.find(item.key);
    if (bound != plan.bindings.end()) {
      if (in.doc.contains(bound->second)) continue;  // alive and accounted for
      if (in.user_deleted.count(bound->second)) continue;  // user took it away; leave it
      continue;
    }

    std::string parent_ref;
    std::optional<double> x, y;
    if (item.parent == "@workspace") {
      parent_ref = in.ctx.workspace;
      x = 40.0;
      y = 40.0 + 340.0 * static_cast<double>(in.doc.children(in.ctx.workspace).size() + workspace_drops);
      ++workspace_drops;
    } else if (item.parent.rfind("@item:", 0) == 0) {
      std::string parent_key = item.parent.substr(6);
      if (plan.waived.count(parent_key)) continue;  // whole branch handed to the user
      auto pb = plan.bindings.find(parent_key);
      if (pb != plan.bindings.end() && in.doc.contains(pb->second)) {
        parent_ref = pb->second;
      } else if (scheduled.count(parent_key)) {
        parent_ref = "@pending:" + parent_key;
      } else {
        continue;  // parent not available yet; revisit next window
      }
    } else {
      parent_ref = item.parent;  // concrete id
      if (!in.doc.contains(parent_ref)) continue;
    }

    ToolCall call = build_create_call(item, parent_ref, x, y);
    out.creates_item[static_cast<int>(out.calls.size())] = item.key;
    out.calls.push_back(std::move(call));
    scheduled.insert(item.key);
  }

  // Pass 2: close the gap on properties — bound items first, then edit goals.
  auto blocked = [&](const NodeId& node, const PropPredicate& pred) {
    return !pred.user_directed && in.user_touched.count({node, pred.key}) != 0;
  };

  for (const auto& item : plan.goal.items) {
    if (static_cast<int>(out.calls.size()) >= budget) break;
    if (plan.waived.count(item.key) || scheduled.count(item.key)) continue;
    auto bound = plan.bindings.find(item.key);
    if (bound == plan.bindings.end() || !in.doc.contains(bound->second)) continue;
    const canvas::CanvasNode& node = in.doc.at(bound->second);
    std::vector<const PropPredicate*> unmet;
    for (const auto& pred : item.predicates)
      if (!predicate_holds(pred, node) && !blocked(bound->second, pred)) unmet.push_back(&pred);
    if (unmet.empty()) continue;
    std::vector<ToolCall> calls;
    append_property_calls(in.doc, bound->second, unmet, calls);
    for (auto& c : calls) {
      if (static_cast<int>(out.calls.size()) >= budget) break;
      out.calls.push_back(std::move(c));
    }
  }

  std::map<NodeId, std::vector<const PropPredicate*>> edit_work;  // keep edit order per node
  std::vector<NodeId> edit_order;
  for (const auto& edit : plan.goal.edits) {
    if (!in.doc.contains(edit.node)) continue;  // target is gone; nothing to enforce
    if (predicate_holds(edit.predicate, in.doc.at(edit.node))) continue;
    if (blocked(edit.node, edit.predicate)) continue;
    if (!edit_work.count(edit.node)) edit_order.push_back(edit.node);
    edit_work[edit.node].push_back(&edit.predicate);
  }
  for (const auto& node : edit_order) {
    if (static_cast<int>(out.calls.size()) >= budget) break;
    std::vector<ToolCall> calls;
    append_property_calls(in.doc, node, edit_work[node], calls);
    for (auto& c : calls) {
      if (static_cast<int>(out.calls.size()) >= budget) break;
      out.calls.push_back(std::move(c));
    }
  }

  if (in.quality == QualityMode::Sloppy)
    for (auto& call : out.calls) degrade_call(call);

  if (out.calls.empty())
    out.note = "plan looks satisfied; nothing left to do";
  else
    out.note = "working through the plan: " + std::to_string(out.calls.size()) + " call(s)" +
               quality_note(in.quality);
  return out;
}

const char* quality_mode_name(QualityMode mode) {
  switch (mode) {
    case QualityMode::Normal: return "normal";
    case QualityMode::Sloppy: return "sloppy";
    case QualityMode::Inert: return "inert";
  }
  return "unknown";
}

}  // namespace coact::agent
