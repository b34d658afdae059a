#include "canvas/serialize.hpp"

#include <algorithm>

#include "support/error.hpp"

namespace coact::canvas {

Json node_to_json(const CanvasNode& node) {
  Json j = Json::object();
  j["id"] = node.id;
  j["kind"] = kind_name(node.kind);
  j["parent"] = node.parent ? Json(*node.parent) : Json(nullptr);
  j["index"] = node.index;
  Json props = Json::object();
  for (const auto& [key, value] : node.props) props[key] = value;
  j["props"] = std::move(props);
  return j;
}

CanvasNode node_from_json(const Json& j) {
  CanvasNode node;
  node.id = j.at("id").get<std::string>();
  auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::CorruptLog, "unknown node kind: " + j.at("kind").dump());
  node.kind = *kind;
  if (j.contains("parent") && !j.at("parent").is_null()) node.parent = j.at("parent").get<std::string>();
  node.index = j.at("index").get<int>();
  if (j.contains("props"))
    for (const auto& [key, value] : j.at("props").items()) node.props[key] = value;
  return node;
}

Json snapshot_to_json(const CanvasSnapshot& snap) {
  Json nodes = Json::object();
  for (const auto& [id, node] : snap.nodes) nodes[id] = node_to_json(node);
  return Json{{"lineage", snap.lineage}, {"revision", snap.revision}, {"root", snap.root}, {"nodes", std::move(nodes)}};
}

CanvasSnapshot snapshot_from_json(const Json& j) {
  CanvasSnapshot snap;
  snap.lineage = j.at("lineage").get<std::string>();
  snap.revision = j.at("revision").get<std::uint64_t>();
  snap.root = j.at("root").get<std::string>();
  for (const auto& [id, node] : j.at("nodes").items()) snap.nodes[id] = node_from_json(node);
  return snap;
}

std::string canonical_canvas_json(const CanvasSnapshot& snap) {
  // nlohmann::json keeps object keys in insertion order; every object built
  // here is filled from ordered maps, so dumping compactly is canonical.
  return snapshot_to_json(snap).dump();
}

Json ToolCall::to_json() const {
  return Json{{"tool", tool}, {"params", params}, {"actor", actor_name(actor)}, {"tick", tick}};
}

ToolCall ToolCall::from_json(const Json& j) {
  ToolCall call;
  call.tool = j.at("tool").get<std::string>();
  call.params = j.value("params", Json::object());
  if (auto actor = actor_from_name(j.value("actor", "agent"))) call.actor = *actor;
  call.tick = j.value("tick", std::int64_t{0});
  return call;
}

void ChangeSet::normalize() {
  std::sort(modified.begin(), modified.end(), [](const PropDelta& a, const PropDelta& b) {
    return a.node != b.node ? a.node < b.node : a.key < b.key;
  });
  std::sort(moved.begin(), moved.end(), [](const MoveDelta& a, const MoveDelta& b) { return a.node < b.node; });
}

void ChangeSet::merge(const ChangeSet& other) {
  for (const auto& [id, node] : other.created) {
    deleted.erase(id);
    created[id] = node;
  }
  for (const auto& id : other.deleted) {
    if (created.erase(id) == 0) deleted.insert(id);
    std::erase_if(modified, [&](const PropDelta& d) { return d.node == id; });
    std::erase_if(moved, [&](const MoveDelta& d) { return d.node == id; });
  }
  for (const auto& delta : other.modified) {
    if (created.count(delta.node)) {
      // fold the edit into the pending creation spec
      auto& spec = created[delta.node];
      if (delta.after)
        spec.props[delta.key] = *delta.after;
      else
        spec.props.erase(delta.key);
      continue;
    }
    auto it = std::find_if(modified.begin(), modified.end(), [&](const PropDelta& d) {
      return d.node == delta.node && d.key == delta.key;
    });
    if (it == modified.end()) {
      modified.push_back(delta);
    } else {
      it->after = delta.after;  // keep the earliest before, take the latest after
      it->override_marker = it->override_marker || delta.override_marker;
      if (it->before == it->after) modified.erase(it);
    }
  }
  for (const auto& delta : other.moved) {
    if (created.count(delta.node)) {
      auto& spec = created[delta.node];
      spec.parent = delta.after_parent;
      spec.index = delta.after_index;
      continue;
    }
    auto it = std::find_if(moved.begin(), moved.end(),
                           [&](const MoveDelta& d) { return d.node == delta.node; });
    if (it == moved.end()) {
      moved.push_back(delta);
    } else {
      it->after_parent = delta.after_parent;
      it->after_index = delta.after_index;
      if (it->before_parent == it->after_parent && it->before_index == it->after_index) moved.erase(it);
    }
  }
  normalize();
}

Json ChangeSet::to_json() const {
  Json created_j = Json::object();
  for (const auto& [id, node] : created) created_j[id] = node_to_json(node);
  Json deleted_j = Json::array();
  for (const auto& id : deleted) deleted_j.push_back(id);
  Json modified_j = Json::array();
  for (const auto& d : modified) {
    Json e{{"node", d.node}, {"key", d.key}};
    e["before"] = d.before ? *d.before : Json(nullptr);
    e["after"] = d.after ? *d.after : Json(nullptr);
    e["before_present"] = d.before.has_value();
    e["after_present"] = d.after.has_value();
    if (d.override_marker) e["override"] = true;
    modified_j.push_back(std::move(e));
  }
  Json moved_j = Json::array();
  for (const auto& d : moved) {
    moved_j.push_back(Json{{"node", d.node},
                           {"before_parent", d.before_parent},
                           {"before_index", d.before_index},
                           {"after_parent", d.after_parent},
                           {"after_index", d.after_index}});
  }
  return Json{{"created", std::move(created_j)},
              {"deleted", std::move(deleted_j)},
              {"modified", std::move(modified_j)},
              {"moved", std::move(moved_j)}};
}

ChangeSet ChangeSet::from_json(const Json& j) {
  ChangeSet cs;
  for (const auto& [id, node] : j.value("created", Json::object()).items()) cs.created[id] = node_from_json(node);
  for (const auto& id : j.value("deleted", Json::array())) cs.deleted.insert(id.get<std::string>());
  for (const auto& e : j.value("modified", Json::array())) {
    PropDelta d;
    d.node = e.at("node").get<std::string>();
    d.key = e.at("key").get<std::string>();
    if (e.value("before_present", !e.at("before").is_null())) d.before = e.at("before");
    if (e.value("after_present", !e.at("after").is_null())) d.after = e.at("after");
    d.override_marker = e.value("override", false);
    cs.modified.push_back(std::move(d));
  }
  for (const auto& e : j.value("moved", Json::array())) {
    MoveDelta d;
    d.node = e.at("node").get<std::string>();
    d.before_parent = e.at("before_parent").get<std::string>();
    d.before_index = e.at("before_index").get<int>();
    d.after_parent = e.at("after_parent").get<std::string>();
    d.after_index = e.at("after_index").get<int>();
    cs.moved.push_back(std::move(d));
  }
  cs.normalize();
  return cs;
}

}  // namespace coact::canvas
