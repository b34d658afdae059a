#include "doctest.h"

#include "agent/goal.hpp"
#include "agent/plan.hpp"
#include "agent/request.hpp"

using namespace coact::agent;
using coact::canvas::CanvasNode;

namespace {

CanvasNode node_with(const std::string& key, Json value) {
  CanvasNode n;
  n.id = "1";
  n.props[key] = std::move(value);
  return n;
}

PropPredicate pred(const std::string& key, PredicateOp op, Json value) {
  PropPredicate p;
  p.key = key;
  p.op = op;
  p.value = std::move(value);
  return p;
}

}  // namespace

TEST_CASE("equality predicates compare the stored value exactly") {
  auto n = node_with("width", Json(120.0));
  CHECK(predicate_holds(pred("width", PredicateOp::Eq, Json(120.0)), n));
  CHECK_FALSE(predicate_holds(pred("width", PredicateOp::Eq, Json(121.0)), n));
  CHECK_FALSE(predicate_holds(pred("height", PredicateOp::Eq, Json(120.0)), n));  // absent prop

  // Structured values compare deeply.
  Json fill{{"type", "solid"}, {"rgba", Json::array({1.0, 0.0, 0.0, 1.0})}};
  auto f = node_with("fill", fill);
  CHECK(predicate_holds(pred("fill", PredicateOp::Eq, fill), f));
  Json other = fill;
  other["rgba"][2] = 0.5;
  CHECK_FALSE(predicate_holds(pred("fill", PredicateOp::Eq, other), f));
}

TEST_CASE("gte predicates are numeric-only floors") {
  auto n = node_with("font_size", Json(18.0));
  CHECK(predicate_holds(pred("font_size", PredicateOp::Gte, Json(18.0)), n));
  CHECK(predicate_holds(pred("font_size", PredicateOp::Gte, Json(12.0)), n));
  CHECK_FALSE(predicate_holds(pred("font_size", PredicateOp::Gte, Json(24.0)), n));

  auto s = node_with("text", Json("hello"));
  CHECK_FALSE(predicate_holds(pred("text", PredicateOp::Gte, Json(1.0)), s));
}

TEST_CASE("predicate flags survive serialization") {
  auto p = pred("corner_radius", PredicateOp::Gte, Json(8.0));
  p.user_directed = true;
  auto j = predicate_to_json(p);
  CHECK(j.at("op") == "gte");
  CHECK(j.at("user_directed") == true);
  CHECK(j.count("user_observed") == 0);  // false flags stay out of the wire form
  auto back = predicate_from_json(j);
  CHECK(back == p);

  p.user_directed = false;
  p.user_observed = true;
  back = predicate_from_json(predicate_to_json(p));
  CHECK(back == p);
}

TEST_CASE("goal specs with edits round-trip") {
  GoalSpec g;
  g.form = "recolor";
  g.summary = "recolor #4 to red";
  GoalEdit e;
  e.node = "4";
  e.predicate = pred("fill", PredicateOp::Eq, Json{{"type", "solid"}});
  e.predicate.user_directed = true;
  g.edits.push_back(e);
  auto back = GoalSpec::from_json(g.to_json());
  CHECK(back == g);
  CHECK(back.edits.front().predicate.user_directed);
  CHECK_FALSE(back.empty());
  CHECK(GoalSpec{}.empty());
}

TEST_CASE("plans serialize canonically and stably") {
  Plan p;
  p.goal = section_goal("footer", "F", 0);
  p.bindings["section"] = "9";
  p.waived.insert("note");
  p.version = 3;
  p.text = "plan text";

  auto back = Plan::from_json(p.to_json());
  CHECK(back == p);

  // Canonical form is byte-stable across copies and key insertion order.
  Plan q = p;
  CHECK(q.canonical() == p.canonical());
  q.version = 4;
  CHECK(q.canonical() != p.canonical());
}
