#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "canvas/changeset.hpp"
#include "canvas/node.hpp"

namespace coact::canvas {

struct CanvasSnapshot {
  std::string lineage;
  std::uint64_t revision = 0;
  NodeId root;
  std::map<NodeId, CanvasNode> nodes;

  bool contains(const NodeId& id) const { return nodes.count(id) != 0; }
  const CanvasNode& at(const NodeId& id) const { return nodes.at(id); }
  std::vector<NodeId> children(const NodeId& parent) const;

  bool operator==(const CanvasSnapshot&) const = default;
};

enum class ViolationCode {
  RootIssue,        // root missing, parented, or duplicated
  ParentMissing,    // node references a parent that does not exist
  CycleDetected,    // parent chain loops instead of reaching the root
  IndexCollision,   // two siblings share an index
  IndexGap,         // sibling indices are not exactly 0..n-1
};
const char* violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  NodeId node;  // offending node ("" when the issue is document-wide)
  std::string detail;
};

// Structural checks over a raw node table. Exposed as a free function so
// deliberately broken structures (cycles, index clashes) can be checked
// without ever being constructible through the document API.
std::vector<Violation> validate_nodes(const std::map<NodeId, CanvasNode>& nodes, const NodeId& root);

class CanvasDocument {
 public:
  explicit CanvasDocument(std::string lineage = "doc");

  const std::string& lineage() const { return lineage_; }
  std::uint64_t revision() const { return revision_; }
  const NodeId& root() const { return root_; }
  const std::map<NodeId, CanvasNode>& nodes() const { return nodes_; }
  bool contains(const NodeId& id) const { return nodes_.count(id) != 0; }
  const CanvasNode& at(const NodeId& id) const;
  std::vector<NodeId> children(const NodeId& parent) const;  // sorted by index
  std::vector<NodeId> subtree(const NodeId& id) const;       // id plus all descendants, preorder

  CanvasSnapshot snapshot() const;
  std::vector<Violation> validate() const { return validate_nodes(nodes_, root_); }

  // The id the next successful create/clone will assign. Id assignment is
  // deterministic, so callers may pre-address a node they are about to make.
  NodeId peek_next_id() const { return std::to_string(id_counter_ + 1); }

  // Shared style registry. Seeded empty; present so style listings have a
  // well-defined (initially empty) answer.
  const std::map<std::string, Json>& styles() const { return styles_; }
  void define_style(const std::string& name, Json value) { styles_[name] = std::move(value); }

  // Dispatch one tool call. On success the revision advances by exactly one,
  // even when the call was an idempotent rewrite with an empty change set.
  // On failure nothing moves: no mutation, no revision bump, no id consumed.
  ToolResult apply(const ToolCall& call);

  // Restore from a snapshot (log replay). Adopts lineage/revision/ids.
  static CanvasDocument from_snapshot(const CanvasSnapshot& snap);

 private:
  friend struct ToolExec;

  NodeId fresh_id() { return std::to_string(++id_counter_); }

  std::string lineage_;
  std::uint64_t revision_ = 0;
  std::uint64_t id_counter_ = 0;
  NodeId root_;
  std::map<NodeId, CanvasNode> nodes_;
  std::map<std::string, Json> styles_;
};

}  // namespace coact::canvas
