#include "canvas/diff.hpp"

#include <set>

#include "support/error.hpp"

namespace coact::canvas {

ChangeSet diff_nodes(const std::map<NodeId, CanvasNode>& before, const std::map<NodeId, CanvasNode>& after) {
  ChangeSet cs;

  for (const auto& [id, node] : after)
    if (!before.count(id)) cs.created.emplace(id, node);
  for (const auto& [id, node] : before)
    if (!after.count(id)) cs.deleted.insert(id);

  for (const auto& [id, b] : before) {
    auto it = after.find(id);
    if (it == after.end()) continue;
    const CanvasNode& a = it->second;
    if (a.kind != b.kind) {
      // An id can only change kind by being rebuilt outside the tool surface;
      // represent that honestly as remove-then-add.
      cs.deleted.insert(id);
      cs.created.emplace(id, a);
      continue;
    }
    if (a.parent != b.parent || a.index != b.index) {
      MoveDelta mv;
      mv.node = id;
      mv.before_parent = b.parent.value_or("");
      mv.before_index = b.index;
      mv.after_parent = a.parent.value_or("");
      mv.after_index = a.index;
      cs.moved.push_back(std::move(mv));
    }
    std::set<std::string> keys;
    for (const auto& [k, v] : b.props) keys.insert(k);
    for (const auto& [k, v] : a.props) keys.insert(k);
    for (const auto& key : keys) {
      auto bit = b.props.find(key);
      auto ait = a.props.find(key);
      const bool in_b = bit != b.props.end();
      const bool in_a = ait != a.props.end();
      if (in_b && in_a && bit->second == ait->second) continue;
      PropDelta d;
      d.node = id;
      d.key = key;
      if (in_b) d.before = bit->second;
      if (in_a) d.after = ait->second;
      cs.modified.push_back(std::move(d));
    }
  }

  cs.normalize();
  return cs;
}

ChangeSet diff(const CanvasSnapshot& before, const CanvasSnapshot& after) {
  if (before.lineage != after.lineage)
    throw Error(ErrorCode::LineageMismatch,
                "cannot diff snapshots of different documents: '" + before.lineage + "' vs '" + after.lineage + "'");
  return diff_nodes(before.nodes, after.nodes);
}

CanvasSnapshot apply_changeset(const CanvasSnapshot& base, const ChangeSet& change) {
  CanvasSnapshot out = base;
  for (const auto& id : change.deleted) out.nodes.erase(id);
  for (const auto& [id, node] : change.created) out.nodes[id] = node;
  for (const auto& mv : change.moved) {
    auto it = out.nodes.find(mv.node);
    if (it == out.nodes.end()) continue;
    it->second.parent = mv.after_parent.empty() ? std::nullopt : std::optional<NodeId>(mv.after_parent);
    it->second.index = mv.after_index;
  }
  for (const auto& d : change.modified) {
    auto it = out.nodes.find(d.node);
    if (it == out.nodes.end()) continue;
    if (d.after)
      it->second.props[d.key] = *d.after;
    else
      it->second.props.erase(d.key);
  }
  return out;
}

}  // namespace coact::canvas
