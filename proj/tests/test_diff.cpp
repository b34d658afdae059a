#include "doctest.h"

#include "canvas/diff.hpp"
#include "canvas/document.hpp"
#include "canvas/tools.hpp"
#include "support/error.hpp"

using namespace coact::canvas;

namespace {

ToolResult apply_ok(CanvasDocument& doc, const std::string& tool, Json params) {
  ToolCall c;
  c.tool = tool;
  c.params = std::move(params);
  auto r = doc.apply(c);
  CAPTURE(tool);
  CAPTURE(r.error_message);
  REQUIRE(r.ok);
  return r;
}

struct Fixture {
  CanvasDocument doc{"d"};
  NodeId frame;
  NodeId rect;
  Fixture() {
    frame = apply_ok(doc, "create_frame",
                     Json{{"parent", doc.root()}, {"top_level", true}, {"width", 500.0}, {"height", 400.0}})
                .created_ids.front();
    rect = apply_ok(doc, "create_rectangle", Json{{"parent", frame}, {"width", 40.0}, {"height", 40.0}})
               .created_ids.front();
  }
};

}  // namespace

TEST_CASE("diff classifies creations, deletions, edits and moves") {
  Fixture f;
  auto a = f.doc.snapshot();

  apply_ok(f.doc, "set_fill_color", Json{{"node", f.rect}, {"r", 1.0}, {"g", 0.0}, {"b", 0.0}});
  auto mkframe = apply_ok(f.doc, "create_frame", Json{{"parent", f.frame}, {"width", 100.0}, {"height", 100.0}});
  const NodeId inner = mkframe.created_ids.front();
  apply_ok(f.doc, "move_node_into_frame", Json{{"node", f.rect}, {"frame", inner}});
  auto b = f.doc.snapshot();

  auto d = diff(a, b);
  CHECK(d.created.count(inner) == 1);
  CHECK(d.deleted.empty());
  REQUIRE(!d.modified.empty());
  bool saw_fill = false;
  for (const auto& m : d.modified) {
    if (m.node == f.rect && m.key == "fill") {
      saw_fill = true;
      CHECK_FALSE(m.before.has_value());
      REQUIRE(m.after.has_value());
    }
  }
  CHECK(saw_fill);
  REQUIRE(d.moved.size() == 1);
  CHECK(d.moved.front().node == f.rect);
  CHECK(d.moved.front().before_parent == f.frame);
  CHECK(d.moved.front().after_parent == inner);

  CHECK(apply_changeset(a, d).nodes == b.nodes);
}

TEST_CASE("diff of identical snapshots is empty") {
  Fixture f;
  auto snap = f.doc.snapshot();
  CHECK(diff(snap, snap).empty());
  CHECK(diff_nodes(snap.nodes, snap.nodes).entry_count() == 0);
}

TEST_CASE("diff refuses snapshots from different documents") {
  CanvasDocument x{"x"};
  CanvasDocument y{"y"};
  CHECK_THROWS_AS(diff(x.snapshot(), y.snapshot()), coact::Error);
  try {
    diff(x.snapshot(), y.snapshot());
  } catch (const coact::Error& e) {
    CHECK(e.code() == coact::ErrorCode::LineageMismatch);
  }
}

TEST_CASE("deletion shows up with the whole subtree") {
  Fixture f;
  auto child = apply_ok(f.doc, "create_ellipse", Json{{"parent", f.frame}, {"width", 8.0}, {"height", 8.0}})
                   .created_ids.front();
  auto a = f.doc.snapshot();
  apply_ok(f.doc, "delete_node", Json{{"node", f.frame}});
  auto b = f.doc.snapshot();
  auto d = diff(a, b);
  CHECK(d.deleted.count(f.frame) == 1);
  CHECK(d.deleted.count(f.rect) == 1);
  CHECK(d.deleted.count(child) == 1);
  CHECK(d.created.empty());
  CHECK(apply_changeset(a, d).nodes == b.nodes);
}

TEST_CASE("normalize orders entries deterministically and serialization round-trips") {
  ChangeSet c;
  c.modified.push_back({"9", "width", Json(1.0), Json(2.0), false});
  c.modified.push_back({"2", "fill", std::nullopt, Json("x"), true});
  c.modified.push_back({"2", "corner_radius", Json(0.0), std::nullopt, false});
  c.moved.push_back({"7", "1", 0, "2", 1});
  c.moved.push_back({"3", "1", 2, "1", 0});
  c.deleted.insert("44");
  c.normalize();
  CHECK(c.modified[0].node == "2");
  CHECK(c.modified[0].key == "corner_radius");
  CHECK(c.modified[1].key == "fill");
  CHECK(c.modified[2].node == "9");
  CHECK(c.moved[0].node == "3");
  CHECK(c.moved[1].node == "7");

  auto round = ChangeSet::from_json(c.to_json());
  CHECK(round == c);
  CHECK(round.modified[1].override_marker);
  CHECK_FALSE(round.modified[0].override_marker);
}

TEST_CASE("merge lets later entries win per node and key") {
  Fixture f;
  auto s0 = f.doc.snapshot();
  apply_ok(f.doc, "set_opacity", Json{{"node", f.rect}, {"opacity", 0.3}});
  auto s1 = f.doc.snapshot();
  apply_ok(f.doc, "set_opacity", Json{{"node", f.rect}, {"opacity", 0.9}});
  apply_ok(f.doc, "rename_node", Json{{"node", f.rect}, {"name", "late"}});
  auto s2 = f.doc.snapshot();

  ChangeSet first = diff(s0, s1);
  ChangeSet second = diff(s1, s2);
  ChangeSet merged = first;
  merged.merge(second);

  // The merged set must replay the whole span in one step.
  CHECK(apply_changeset(s0, merged).nodes == s2.nodes);
  int opacity_entries = 0;
  for (const auto& m : merged.modified) {
    if (m.node == f.rect && m.key == "opacity") {
      ++opacity_entries;
      REQUIRE(m.after.has_value());
      CHECK(m.after->get<double>() == doctest::Approx(0.9));
    }
  }
  CHECK(opacity_entries == 1);
}

TEST_CASE("create then delete inside one span cancels out") {
  Fixture f;
  auto a = f.doc.snapshot();
  auto tmp = apply_ok(f.doc, "create_star", Json{{"parent", f.frame}, {"points", 5.0}, {"width", 10.0}, {"height", 10.0}})
                 .created_ids.front();
  apply_ok(f.doc, "delete_node", Json{{"node", tmp}});
  auto b = f.doc.snapshot();
  auto d = diff(a, b);
  CHECK(d.created.count(tmp) == 0);
  CHECK(d.deleted.count(tmp) == 0);
  CHECK(apply_changeset(a, d).nodes == b.nodes);
}
