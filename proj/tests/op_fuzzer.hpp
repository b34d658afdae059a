#pragma once

// Random canvas operation generator for property tests: mostly-valid calls
// biased toward structure-churning edits, with enough junk mixed in to
// exercise the rejection paths.

#include <string>
#include <vector>

#include "canvas/document.hpp"
#include "support/rng.hpp"

namespace fuzz {

using coact::Rng;
using namespace coact::canvas;

inline Json jn(double v) { return Json(v); }

class OpFuzzer {
 public:
  OpFuzzer(CanvasDocument& doc, Rng& rng) : doc_(doc), rng_(rng) {}

  ToolCall next() {
    refresh();
    ToolCall call;
    call.actor = rng_.chance(0.5) ? Actor::Agent : Actor::User;
    const auto roll = rng_.below(100);
    if (ids_.empty() || roll < 30) {
      make_create(call);
    } else if (roll < 45) {
      make_style(call);
    } else if (roll < 55) {
      make_layout(call);
    } else if (roll < 65) {
      make_text(call);
    } else {
      make_structure(call);
    }
    return call;
  }

 private:
  CanvasDocument& doc_;
  Rng& rng_;
  std::vector<NodeId> ids_;

  void refresh() {
    ids_.clear();
    for (const auto& [id, node] : doc_.nodes()) {
      if (id != doc_.root()) ids_.push_back(id);
    }
  }

  NodeId any() { return ids_[rng_.below(ids_.size())]; }

  // Some parent that can usually hold children; sometimes the page root to
  // hit the top-level rules.
  NodeId any_parent() {
    if (ids_.empty() || rng_.chance(0.1)) return doc_.root();
    return any();
  }

  void make_create(ToolCall& call) {
    const NodeId parent = any_parent();
    const bool at_root = parent == doc_.root();
    Json params{{"parent", parent}, {"width", jn(10 + 5.0 * rng_.below(20))},
                {"height", jn(10 + 5.0 * rng_.below(20))}};
    if (at_root && rng_.chance(0.8)) params["top_level"] = true;
    switch (rng_.below(5)) {
      case 0:
        call.tool = "create_rectangle";
        if (rng_.chance(0.4)) params["corner_radius"] = jn(2.0 * rng_.below(8));
        if (rng_.chance(0.4)) params["fill"] = Json::array({0.2, 0.4, 0.6});
        break;
      case 1:
        call.tool = "create_frame";
        if (rng_.chance(0.6)) {
          params["layout_mode"] = rng_.chance(0.5) ? "horizontal" : "vertical";
          params["item_spacing"] = jn(4.0 * rng_.below(6));
          if (rng_.chance(0.5)) params["padding"] = jn(4.0 * rng_.below(5));
        }
        break;
      case 2:
        call.tool = "create_text";
        params.erase("width");
        params.erase("height");
        params["text"] = std::string("t") + std::to_string(rng_.below(100));
        if (rng_.chance(0.5)) params["font_size"] = jn(10 + 2.0 * rng_.below(10));
        break;
      case 3:
        call.tool = "create_ellipse";
        break;
      default:
        call.tool = "create_polygon";
        params["sides"] = jn(3 + static_cast<double>(rng_.below(6)));
        break;
    }
    if (rng_.chance(0.5)) {
      params["x"] = jn(5.0 * rng_.below(40));
      params["y"] = jn(5.0 * rng_.below(40));
    }
    if (rng_.chance(0.3)) params["name"] = std::string("fz-") + std::to_string(rng_.below(1000));
    call.params = std::move(params);
  }

  void make_style(ToolCall& call) {
    const NodeId node = any();
    switch (rng_.below(4)) {
      case 0:
        call.tool = "set_fill_color";
        call.params = Json{{"node", node}, {"r", jn(0.1 * rng_.below(10))},
                           {"g", jn(0.1 * rng_.below(10))}, {"b", jn(0.1 * rng_.below(10))}};
        break;
      case 1:
        call.tool = "set_corner_radius";
        call.params = Json{{"node", node}, {"radius", jn(2.0 * rng_.below(10))}};
        break;
      case 2:
        call.tool = "set_opacity";
        call.params = Json{{"node", node}, {"opacity", jn(0.1 * rng_.below(11))}};
        break;
      default:
        call.tool = "set_stroke";
        call.params = Json{{"node", node}, {"r", 0.0}, {"g", 0.0}, {"b", 0.0},
                           {"weight", jn(1 + static_cast<double>(rng_.below(4)))}};
        break;
    }
  }

  void make_layout(ToolCall& call) {
    const NodeId node = any();
    switch (rng_.below(4)) {
      case 0:
        call.tool = "set_layout_mode";
        call.params = Json{{"node", node},
                           {"mode", rng_.below(3) == 0   ? "none"
                                    : rng_.chance(0.5) ? "horizontal"
                                                       : "vertical"}};
        break;
      case 1:
        call.tool = "set_item_spacing";
        call.params = Json{{"node", node}, {"spacing", jn(4.0 * rng_.below(8))}};
        break;
      case 2:
        call.tool = "set_padding";
        call.params = Json{{"node", node}, {"all", jn(4.0 * rng_.below(6))}};
        break;
      default:
        call.tool = "set_axis_align";
        call.params = Json{{"node", node}, {"primary", rng_.chance(0.5) ? "min" : "center"},
                           {"counter", rng_.chance(0.5) ? "min" : "center"}};
        break;
    }
  }

  void make_text(ToolCall& call) {
    const NodeId node = any();
    if (rng_.chance(0.5)) {
      call.tool = "set_text_content";
      call.params = Json{{"node", node}, {"text", std::string("e") + std::to_string(rng_.below(50))}};
    } else {
      call.tool = "set_text_properties";
      call.params = Json{{"node", node}, {"font_size", jn(8 + 2.0 * rng_.below(12))}};
    }
  }

  void make_structure(ToolCall& call) {
    const NodeId node = any();
    switch (rng_.below(8)) {
      case 0:
        call.tool = "move_node";
        call.params = Json{{"node", node}, {"x", jn(5.0 * rng_.below(40))}, {"y", jn(5.0 * rng_.below(40))}};
        break;
      case 1:
        call.tool = "move_node_into_frame";
        call.params = Json{{"node", node}, {"frame", any()}};
        if (rng_.chance(0.5)) call.params["index"] = jn(static_cast<double>(rng_.below(4)));
        break;
      case 2:
        call.tool = "clone_node";
        call.params = Json{{"node", node}, {"parent", any_parent()}};
        break;
      case 3:
        call.tool = "delete_node";
        call.params = Json{{"node", node}};
        break;
      case 4:
        call.tool = "rename_node";
        call.params = Json{{"node", node}, {"name", std::string("fz-") + std::to_string(rng_.below(1000))}};
        break;
      case 5:
        call.tool = "resize_node";
        call.params = Json{{"node", node}, {"width", jn(5 + 5.0 * rng_.below(20))},
                           {"height", jn(5 + 5.0 * rng_.below(20))}};
        break;
      case 6:
        call.tool = "reorder_node";
        call.params = Json{{"node", node}, {"index", jn(static_cast<double>(rng_.below(5)))}};
        break;
      default: {
        if (ids_.size() >= 2) {
          const NodeId other = any();
          if (other != node && rng_.chance(0.6)) {
            call.tool = "group_nodes";
            call.params = Json{{"nodes", Json::array({node, other})}};
            return;
          }
        }
        call.tool = "rotate_node";
        call.params = Json{{"node", node}, {"degrees", jn(15.0 * rng_.below(24))}};
        break;
      }
    }
  }
};

}  // namespace fuzz
