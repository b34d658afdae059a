#pragma once

#include <map>

#include "canvas/document.hpp"

namespace coact::canvas {

struct ProjectedBox {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

// Resolves every node to absolute page coordinates. Children of auto-layout
// frames are stacked purely by sibling index (padding start, item spacing
// between), so a lower index always lands further left (horizontal mode) or
// further up (vertical mode); their own x/y props are ignored. Children of
// plain containers sit at parent origin plus their x/y props.
std::map<NodeId, ProjectedBox> project_layout(const CanvasSnapshot& snap);

}  // namespace coact::canvas
