#include "agent/goal.hpp"

namespace coact::agent {

const char* predicate_op_name(PredicateOp op) { return op == PredicateOp::Eq ? "eq" : "gte"; }

bool predicate_holds(const PropPredicate& pred, const canvas::CanvasNode& node) {
  auto it = node.props.find(pred.key);
  if (it == node.props.end()) return false;
  if (pred.op == PredicateOp::Eq) return it->second == pred.value;
  // gte only makes sense for numbers; anything else fails the check
  if (!it->second.is_number() || !pred.value.is_number()) return false;
  return it->second.get<double>() >= pred.value.get<double>();
}

Json predicate_to_json(const PropPredicate& pred) {
  Json j{{"key", pred.key}, {"op", predicate_op_name(pred.op)}, {"value", pred.value}};
  if (pred.user_directed) j["user_directed"] = true;
  if (pred.user_observed) j["user_observed"] = true;
  return j;
}

PropPredicate predicate_from_json(const Json& j) {
  PropPredicate pred;
  pred.key = j.at("key").get<std::string>();
  pred.op = j.at("op").get<std::string>() == "gte" ? PredicateOp::Gte : PredicateOp::Eq;
  pred.value = j.at("value");
  pred.user_directed = j.value("user_directed", false);
  pred.user_observed = j.value("user_observed", false);
  return pred;
}

Json GoalSpec::to_json() const {
  Json items_j = Json::array();
  for (const auto& item : items) {
    Json preds = Json::array();
    for (const auto& p : item.predicates) preds.push_back(predicate_to_json(p));
    Json e{{"key", item.key},
           {"kind", item.kind},
           {"parent", item.parent},
           {"name", item.name},
           {"predicates", std::move(preds)}};
    if (!item.group.empty()) e["group"] = item.group;
    items_j.push_back(std::move(e));
  }
  Json edits_j = Json::array();
  for (const auto& edit : edits)
    edits_j.push_back(Json{{"node", edit.node}, {"predicate", predicate_to_json(edit.predicate)}});
  return Json{{"form", form}, {"summary", summary}, {"items", std::move(items_j)}, {"edits", std::move(edits_j)}};
}

GoalSpec GoalSpec::from_json(const Json& j) {
  GoalSpec goal;
  goal.form = j.value("form", "");
  goal.summary = j.value("summary", "");
  for (const auto& e : j.value("items", Json::array())) {
    GoalItem item;
    item.key = e.at("key").get<std::string>();
    item.kind = e.at("kind").get<std::string>();
    item.parent = e.at("parent").get<std::string>();
    item.name = e.at("name").get<std::string>();
    item.group = e.value("group", "");
    for (const auto& p : e.value("predicates", Json::array())) item.predicates.push_back(predicate_from_json(p));
    goal.items.push_back(std::move(item));
  }
  for (const auto& e : j.value("edits", Json::array())) {
    GoalEdit edit;
    edit.node = e.at("node").get<std::string>();
    edit.predicate = predicate_from_json(e.at("predicate"));
    goal.edits.push_back(std::move(edit));
  }
  return goal;
}

}  // namespace coact::agent
