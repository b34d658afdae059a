#include "canvas/document.hpp"

#include <algorithm>
#include <unordered_set>

#include "support/error.hpp"

namespace coact::canvas {

const char* kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Frame: return "frame";
    case NodeKind::Group: return "group";
    case NodeKind::Rectangle: return "rectangle";
    case NodeKind::Ellipse: return "ellipse";
    case NodeKind::Polygon: return "polygon";
    case NodeKind::Star: return "star";
    case NodeKind::Line: return "line";
    case NodeKind::Text: return "text";
    case NodeKind::Graphic: return "graphic";
    case NodeKind::BooleanComposite: return "boolean_composite";
  }
  return "unknown";
}

std::optional<NodeKind> kind_from_name(const std::string& name) {
  static const std::map<std::string, NodeKind> table = {
      {"frame", NodeKind::Frame},         {"group", NodeKind::Group},
      {"rectangle", NodeKind::Rectangle}, {"ellipse", NodeKind::Ellipse},
      {"polygon", NodeKind::Polygon},     {"star", NodeKind::Star},
      {"line", NodeKind::Line},           {"text", NodeKind::Text},
      {"graphic", NodeKind::Graphic},     {"boolean_composite", NodeKind::BooleanComposite},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const char* actor_name(Actor actor) { return actor == Actor::Agent ? "agent" : "user"; }

std::optional<Actor> actor_from_name(const std::string& name) {
  if (name == "agent") return Actor::Agent;
  if (name == "user") return Actor::User;
  return std::nullopt;
}

const char* tool_error_name(ToolError error) {
  switch (error) {
    case ToolError::UnknownTool: return "UnknownTool";
    case ToolError::MissingNode: return "MissingNode";
    case ToolError::InvalidParam: return "InvalidParam";
    case ToolError::RootLevelCreate: return "RootLevelCreate";
    case ToolError::MoveInsideAutoLayout: return "MoveInsideAutoLayout";
  }
  return "Unknown";
}

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::RootIssue: return "RootIssue";
    case ViolationCode::ParentMissing: return "ParentMissing";
    case ViolationCode::CycleDetected: return "CycleDetected";
    case ViolationCode::IndexCollision: return "IndexCollision";
    case ViolationCode::IndexGap: return "IndexGap";
  }
  return "Unknown";
}

std::vector<NodeId> CanvasSnapshot::children(const NodeId& parent) const {
  std::vector<NodeId> out;
  for (const auto& [id, node] : nodes)
    if (node.parent && *node.parent == parent) out.push_back(id);
  std::sort(out.begin(), out.end(),
            [this](const NodeId& a, const NodeId& b) { return nodes.at(a).index < nodes.at(b).index; });
  return out;
}

CanvasDocument::CanvasDocument(std::string lineage) : lineage_(std::move(lineage)) {
  CanvasNode page;
  page.id = std::to_string(id_counter_);  // "0"
  page.kind = NodeKind::Frame;
  page.props[prop::kName] = "page";
  root_ = page.id;
  nodes_.emplace(page.id, std::move(page));
}

const CanvasNode& CanvasDocument::at(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::LedgerGap, "no such node in document: " + id);
  return it->second;
}

std::vector<NodeId> CanvasDocument::children(const NodeId& parent) const {
  std::vector<NodeId> out;
  for (const auto& [id, node] : nodes_)
    if (node.parent && *node.parent == parent) out.push_back(id);
  std::sort(out.begin(), out.end(),
            [this](const NodeId& a, const NodeId& b) { return nodes_.at(a).index < nodes_.at(b).index; });
  return out;
}

std::vector<NodeId> CanvasDocument::subtree(const NodeId& id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (!contains(cur)) continue;
    out.push_back(cur);
    auto kids = children(cur);
    // push in reverse so preorder pops left-to-right
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

CanvasSnapshot CanvasDocument::snapshot() const {
  CanvasSnapshot snap;
  snap.lineage = lineage_;
  snap.revision = revision_;
  snap.root = root_;
  snap.nodes = nodes_;
  return snap;
}

CanvasDocument CanvasDocument::from_snapshot(const CanvasSnapshot& snap) {
  CanvasDocument doc(snap.lineage);
  doc.revision_ = snap.revision;
  doc.root_ = snap.root;
  doc.nodes_ = snap.nodes;
  // Resume id allocation above every numeric id present, so replayed
  // documents hand out the same fresh ids the original run would.
  std::uint64_t top = 0;
  for (const auto& [id, node] : snap.nodes) {
    try {
      top = std::max(top, static_cast<std::uint64_t>(std::stoull(id)));
    } catch (...) {
      // non-numeric ids never collide with the counter scheme
    }
  }
  doc.id_counter_ = top;
  return doc;
}

std::vector<Violation> validate_nodes(const std::map<NodeId, CanvasNode>& nodes, const NodeId& root) {
  std::vector<Violation> out;

  auto root_it = nodes.find(root);
  if (root_it == nodes.end()) {
    out.push_back({ViolationCode::RootIssue, root, "root node is missing"});
  } else if (root_it->second.parent) {
    out.push_back({ViolationCode::RootIssue, root, "root node has a parent"});
  }

  // Dangling parents.
  for (const auto& [id, node] : nodes) {
    if (id == root) continue;
    if (!node.parent) {
      out.push_back({ViolationCode::RootIssue, id, "non-root node has no parent"});
    } else if (!nodes.count(*node.parent)) {
      out.push_back({ViolationCode::ParentMissing, id, "parent " + *node.parent + " does not exist"});
    }
  }

  // Cycles: follow parent links; any walk that revisits a node without
  // reaching the root is a loop. Each loop is reported once, not once per
  // trapped node.
  std::unordered_set<std::string> safe;       // known to reach root (or a dangling edge, reported above)
  std::unordered_set<std::string> condemned;  // known to be inside or behind a loop
  for (const auto& [id, node] : nodes) {
    std::unordered_set<std::string> seen;
    NodeId cur = id;
    bool cycle = false;
    bool already_reported = false;
    while (true) {
      if (cur == root || safe.count(cur)) break;
      if (condemned.count(cur)) {
        already_reported = true;
        break;
      }
      if (!seen.insert(cur).second) {
        cycle = true;
        break;
      }
      auto it = nodes.find(cur);
      if (it == nodes.end() || !it->second.parent) break;
      cur = *it->second.parent;
    }
    if (cycle || already_reported) {
      for (const auto& n : seen) condemned.insert(n);
      if (cycle)
        out.push_back({ViolationCode::CycleDetected, id, "parent chain loops without reaching the root"});
    } else {
      for (const auto& n : seen) safe.insert(n);
    }
  }

  // Sibling index integrity: each parent's children must carry 0..n-1 exactly.
  std::map<NodeId, std::vector<int>> sibling_indices;
  for (const auto& [id, node] : nodes) {
    if (node.parent && nodes.count(*node.parent)) sibling_indices[*node.parent].push_back(node.index);
  }
  for (auto& [parent, indices] : sibling_indices) {
    std::sort(indices.begin(), indices.end());
    bool collision = false, gap = false;
    for (std::size_t i = 0; i + 1 < indices.size(); ++i)
      if (indices[i] == indices[i + 1]) collision = true;
    for (std::size_t i = 0; i < indices.size(); ++i)
      if (indices[i] != static_cast<int>(i)) gap = true;
    if (collision)
      out.push_back({ViolationCode::IndexCollision, parent, "two children share a sibling index"});
    else if (gap)
      out.push_back({ViolationCode::IndexGap, parent, "sibling indices are not contiguous from zero"});
  }

  return out;
}

}  // namespace coact::canvas
