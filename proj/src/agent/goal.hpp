#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canvas/document.hpp"

namespace coact::agent {

using canvas::Json;
using canvas::NodeId;

enum class PredicateOp { Eq, Gte };
const char* predicate_op_name(PredicateOp op);

struct PropPredicate {
  std::string key;
  PredicateOp op = PredicateOp::Eq;
  Json value;
  bool user_directed = false;  // asserted by an explicit user instruction; enforced even over user edits
  bool user_observed = false;  // rewritten to match a change the user made on canvas

  bool operator==(const PropPredicate&) const = default;
};

// One element the agent intends to create. `key` is the stable handle used
// for bindings and parent references; `parent` is either "@workspace", a
// concrete node id, or "@item:<key>" of an earlier item.
struct GoalItem {
  std::string key;
  std::string kind;
  std::string parent;
  std::string name;
  std::string group;  // non-empty for repeated elements (columns, cards)
  std::vector<PropPredicate> predicates;

  bool operator==(const GoalItem&) const = default;
};

struct GoalEdit {
  NodeId node;
  PropPredicate predicate;

  bool operator==(const GoalEdit&) const = default;
};

// Machine-checkable intent of one user request: elements to bring into
// existence plus property states to reach on existing nodes.
struct GoalSpec {
  std::string form;     // which request shape produced this goal
  std::string summary;  // one-line description used in the plan narrative
  std::vector<GoalItem> items;
  std::vector<GoalEdit> edits;

  bool empty() const { return items.empty() && edits.empty(); }
  Json to_json() const;
  static GoalSpec from_json(const Json& j);

  bool operator==(const GoalSpec&) const = default;
};

bool predicate_holds(const PropPredicate& pred, const canvas::CanvasNode& node);

Json predicate_to_json(const PropPredicate& pred);
PropPredicate predicate_from_json(const Json& j);

}  // namespace coact::agent
