#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "canvas/node.hpp"

namespace coact::canvas {

enum class Actor { Agent, User };
const char* actor_name(Actor actor);
std::optional<Actor> actor_from_name(const std::string& name);

struct ToolCall {
  std::string tool;
  Json params = Json::object();
  Actor actor = Actor::Agent;
  std::int64_t tick = 0;

  Json to_json() const;
  static ToolCall from_json(const Json& j);
};

// Recoverable failures of individual tool calls. These are data, not
// exceptions: a rejected call leaves the document untouched and the caller
// decides what to do with the report.
enum class ToolError {
  UnknownTool,
  MissingNode,
  InvalidParam,
  RootLevelCreate,
  MoveInsideAutoLayout,
};
const char* tool_error_name(ToolError error);

struct PropDelta {
  NodeId node;
  std::string key;
  std::optional<Json> before;  // absent => property did not exist
  std::optional<Json> after;   // absent => property was removed
  // Attribution detail: set when a change the agent expected was absent or
  // landed with a different value, i.e. the user overrode the agent.
  bool override_marker = false;

  bool operator==(const PropDelta&) const = default;
};

struct MoveDelta {
  NodeId node;
  NodeId before_parent;
  int before_index = 0;
  NodeId after_parent;
  int after_index = 0;

  bool operator==(const MoveDelta&) const = default;
};

struct ChangeSet {
  std::map<NodeId, CanvasNode> created;  // full spec of each new node
  std::set<NodeId> deleted;
  std::vector<PropDelta> modified;  // sorted by (node, key)
  std::vector<MoveDelta> moved;     // sorted by node

  bool empty() const { return created.empty() && deleted.empty() && modified.empty() && moved.empty(); }
  std::size_t entry_count() const { return created.size() + deleted.size() + modified.size() + moved.size(); }
  void normalize();                  // establish the documented sort order
  void merge(const ChangeSet& other);  // later entries win on the same (node, key)

  Json to_json() const;
  static ChangeSet from_json(const Json& j);

  bool operator==(const ChangeSet&) const = default;
};

struct ToolResult {
  bool ok = false;
  std::optional<ToolError> error;
  std::string error_message;
  std::vector<NodeId> created_ids;  // in creation order, for callers that chain on new nodes
  ChangeSet change;
  Json data;  // read-only payloads (style listings); null otherwise

  static ToolResult failure(ToolError err, std::string message) {
    ToolResult r;
    r.error = err;
    r.error_message = std::move(message);
    return r;
  }
};

}  // namespace coact::canvas
