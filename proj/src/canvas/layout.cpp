#include "canvas/layout.hpp"

namespace coact::canvas {
namespace {

double padding_side(const CanvasNode& node, const char* side) {
  auto it = node.props.find(prop::kPadding);
  if (it == node.props.end() || !it->second.is_object()) return 0.0;
  return it->second.value(side, 0.0);
}

void place(const CanvasSnapshot& snap, const NodeId& id, double origin_x, double origin_y,
           std::map<NodeId, ProjectedBox>& out) {
  const CanvasNode& node = snap.at(id);
  ProjectedBox box{origin_x, origin_y, node.num(prop::kWidth), node.num(prop::kHeight)};
  out[id] = box;

  auto kids = snap.children(id);
  if (kids.empty()) return;

  std::string mode = node.str(prop::kLayoutMode, "none");
  if (mode == "horizontal" || mode == "vertical") {
    double spacing = node.num(prop::kItemSpacing, 0.0);
    double cursor_x = origin_x + padding_side(node, "left");
    double cursor_y = origin_y + padding_side(node, "top");
    for (const auto& kid : kids) {
      const CanvasNode& child = snap.at(kid);
      place(snap, kid, cursor_x, cursor_y, out);
      if (mode == "horizontal")
        cursor_x += child.num(prop::kWidth) + spacing;
      else
        cursor_y += child.num(prop::kHeight) + spacing;
    }
  } else {
    for (const auto& kid : kids) {
      const CanvasNode& child = snap.at(kid);
      place(snap, kid, origin_x + child.num(prop::kX), origin_y + child.num(prop::kY), out);
    }
  }
}

}  // namespace

std::map<NodeId, ProjectedBox> project_layout(const CanvasSnapshot& snap) {
  std::map<NodeId, ProjectedBox> out;
  if (snap.contains(snap.root)) place(snap, snap.root, 0.0, 0.0, out);
  return out;
}

}  // namespace coact::canvas
