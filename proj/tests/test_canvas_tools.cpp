#include "doctest.h"

#include "canvas/document.hpp"
#include "canvas/serialize.hpp"
#include "canvas/tools.hpp"

using namespace coact::canvas;

namespace {

ToolCall call(const std::string& tool, Json params, Actor actor = Actor::Agent) {
  ToolCall c;
  c.tool = tool;
  c.params = std::move(params);
  c.actor = actor;
  return c;
}

// Applies and requires success.
ToolResult ok(CanvasDocument& doc, const std::string& tool, Json params) {
  ToolResult r = doc.apply(call(tool, std::move(params)));
  CAPTURE(tool);
  CAPTURE(r.error_message);
  REQUIRE(r.ok);
  return r;
}

// A page with one plain frame to work inside.
struct Fixture {
  CanvasDocument doc{"t"};
  NodeId frame;
  Fixture() {
    frame = ok(doc, "create_frame",
               Json{{"parent", doc.root()}, {"top_level", true}, {"width", 800.0}, {"height", 600.0}})
                .created_ids.front();
  }
};

}  // namespace

TEST_CASE("catalogue exposes exactly 38 tools in 5 groups") {
  const auto& cat = tool_catalogue();
  CHECK(cat.size() == 38);
  int text = 0, op = 0, style = 0, layout = 0, create = 0;
  for (const auto& spec : cat) {
    switch (spec.group) {
      case ToolGroup::Text: ++text; break;
      case ToolGroup::Operation: ++op; break;
      case ToolGroup::Style: ++style; break;
      case ToolGroup::Layout: ++layout; break;
      case ToolGroup::Create: ++create; break;
    }
    CHECK(is_known_tool(spec.name));
  }
  CHECK(text == 4);
  CHECK(op == 11);
  CHECK(style == 9);
  CHECK(layout == 5);
  CHECK(create == 9);
  CHECK_FALSE(is_known_tool("set_everything"));
  CHECK(is_create_tool("create_star"));
  CHECK_FALSE(is_create_tool("clone_node"));
}

TEST_CASE("create assigns sequential ids and bumps the revision") {
  Fixture f;
  const auto rev = f.doc.revision();
  const auto predicted = f.doc.peek_next_id();
  auto r = ok(f.doc, "create_rectangle",
              Json{{"parent", f.frame}, {"width", 100.0}, {"height", 40.0}});
  REQUIRE(r.created_ids.size() == 1);
  CHECK(r.created_ids.front() == predicted);
  CHECK(f.doc.revision() == rev + 1);
  const auto& node = f.doc.at(r.created_ids.front());
  CHECK(node.kind == NodeKind::Rectangle);
  CHECK(node.num("width") == doctest::Approx(100.0));
  CHECK(node.parent.has_value());
  CHECK(*node.parent == f.frame);
}

TEST_CASE("rejected calls leave the document untouched") {
  Fixture f;
  const auto snap = f.doc.snapshot();
  const auto rev = f.doc.revision();

  SUBCASE("unknown tool") {
    auto r = f.doc.apply(call("sharpen_pixels", Json{{"node", f.frame}}));
    CHECK_FALSE(r.ok);
    REQUIRE(r.error.has_value());
    CHECK(*r.error == ToolError::UnknownTool);
  }
  SUBCASE("missing node") {
    auto r = f.doc.apply(call("delete_node", Json{{"node", "999"}}));
    CHECK_FALSE(r.ok);
    REQUIRE(r.error.has_value());
    CHECK(*r.error == ToolError::MissingNode);
  }
  SUBCASE("invalid parameter") {
    auto r = f.doc.apply(
        call("create_rectangle", Json{{"parent", f.frame}, {"width", -5.0}, {"height", 10.0}}));
    CHECK_FALSE(r.ok);
    REQUIRE(r.error.has_value());
    CHECK(*r.error == ToolError::InvalidParam);
  }
  SUBCASE("unexpected parameter key") {
    auto r = f.doc.apply(
        call("create_rectangle", Json{{"parent", f.frame}, {"width", 5.0}, {"height", 5.0}, {"wat", 1}}));
    CHECK_FALSE(r.ok);
  }
  SUBCASE("page-level create needs the explicit flag") {
    auto r = f.doc.apply(call("create_rectangle",
                              Json{{"parent", f.doc.root()}, {"width", 5.0}, {"height", 5.0}}));
    CHECK_FALSE(r.ok);
    REQUIRE(r.error.has_value());
    CHECK(*r.error == ToolError::RootLevelCreate);
  }
  CHECK(f.doc.revision() == rev);
  CHECK(canonical_canvas_json(f.doc.snapshot()) == canonical_canvas_json(snap));
}

TEST_CASE("delete removes the whole subtree and closes index gaps") {
  Fixture f;
  auto a = ok(f.doc, "create_frame", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}})
               .created_ids.front();
  auto b = ok(f.doc, "create_rectangle", Json{{"parent", a}, {"width", 4.0}, {"height", 4.0}})
               .created_ids.front();
  auto c = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 4.0}, {"height", 4.0}})
               .created_ids.front();
  auto r = ok(f.doc, "delete_node", Json{{"node", a}});
  CHECK(r.change.deleted.count(a) == 1);
  CHECK(r.change.deleted.count(b) == 1);
  CHECK_FALSE(f.doc.contains(a));
  CHECK_FALSE(f.doc.contains(b));
  CHECK(f.doc.at(c).index == 0);
}

TEST_CASE("clone duplicates a subtree with fresh ids and preserved structure") {
  Fixture f;
  auto inner = ok(f.doc, "create_frame",
                  Json{{"parent", f.frame}, {"name", "card"}, {"width", 100.0}, {"height", 80.0}})
                   .created_ids.front();
  ok(f.doc, "create_text", Json{{"parent", inner}, {"text", "hello"}});
  const auto predicted = f.doc.peek_next_id();
  auto r = ok(f.doc, "clone_node", Json{{"node", inner}, {"parent", f.frame}});
  REQUIRE(r.created_ids.size() == 2);
  CHECK(r.created_ids.front() == predicted);  // clone root gets the next id
  const auto& root_clone = f.doc.at(r.created_ids.front());
  CHECK(root_clone.name() == "card");
  CHECK(root_clone.kind == NodeKind::Frame);
  const auto kids = f.doc.children(r.created_ids.front());
  REQUIRE(kids.size() == 1);
  CHECK(f.doc.at(kids.front()).str("text") == "hello");
  // The original is untouched.
  CHECK(f.doc.children(inner).size() == 1);
}

TEST_CASE("group and ungroup preserve member order") {
  Fixture f;
  std::vector<NodeId> members;
  for (int i = 0; i < 3; ++i) {
    members.push_back(
        ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}})
            .created_ids.front());
  }
  auto g = ok(f.doc, "group_nodes", Json{{"nodes", members}}).created_ids.front();
  CHECK(f.doc.at(g).kind == NodeKind::Group);
  auto grouped = f.doc.children(g);
  REQUIRE(grouped.size() == 3);
  CHECK(grouped == members);

  ok(f.doc, "ungroup_nodes", Json{{"group", g}});
  CHECK_FALSE(f.doc.contains(g));
  auto back = f.doc.children(f.frame);
  REQUIRE(back.size() == 3);
  CHECK(back == members);
}

TEST_CASE("move_node is refused inside auto-layout frames") {
  Fixture f;
  auto stack = ok(f.doc, "create_frame",
                  Json{{"parent", f.frame}, {"width", 200.0}, {"height", 100.0},
                       {"layout_mode", "horizontal"}})
                   .created_ids.front();
  auto child = ok(f.doc, "create_rectangle", Json{{"parent", stack}, {"width", 10.0}, {"height", 10.0}})
                   .created_ids.front();
  auto r = f.doc.apply(call("move_node", Json{{"node", child}, {"x", 33.0}, {"y", 44.0}}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.error.has_value());
  CHECK(*r.error == ToolError::MoveInsideAutoLayout);
  // Reordering goes through move_node_into_frame with an index instead.
  auto second = ok(f.doc, "create_rectangle", Json{{"parent", stack}, {"width", 10.0}, {"height", 10.0}})
                    .created_ids.front();
  ok(f.doc, "move_node_into_frame", Json{{"node", second}, {"frame", stack}, {"index", 0.0}});
  auto kids = f.doc.children(stack);
  REQUIRE(kids.size() == 2);
  CHECK(kids.front() == second);
  CHECK(f.doc.at(second).index == 0);
  CHECK(f.doc.at(child).index == 1);
}

TEST_CASE("style tools write the documented properties") {
  Fixture f;
  auto rect = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}})
                  .created_ids.front();
  ok(f.doc, "set_fill_color", Json{{"node", rect}, {"r", 0.1}, {"g", 0.2}, {"b", 0.3}});
  auto fill = f.doc.at(rect).props.at("fill");
  REQUIRE(fill.is_object());
  CHECK(fill.at("type") == "solid");
  auto rgba = fill.at("rgba");
  REQUIRE(rgba.is_array());
  CHECK(rgba.size() == 4);  // alpha defaulted
  CHECK(rgba[0].get<double>() == doctest::Approx(0.1));
  CHECK(rgba[3].get<double>() == doctest::Approx(1.0));

  ok(f.doc, "set_corner_radius", Json{{"node", rect}, {"radius", 8.0}});
  CHECK(f.doc.at(rect).num("corner_radius") == doctest::Approx(8.0));

  ok(f.doc, "set_opacity", Json{{"node", rect}, {"opacity", 0.5}});
  CHECK(f.doc.at(rect).num("opacity") == doctest::Approx(0.5));

  auto bad = f.doc.apply(call("set_opacity", Json{{"node", rect}, {"opacity", 1.5}}));
  CHECK_FALSE(bad.ok);

  // get_styles reports without touching any node, though the accepted call
  // still advances the revision counter like every other.
  const auto before = f.doc.snapshot();
  auto styles = ok(f.doc, "get_styles", Json::object());
  CHECK(f.doc.revision() == before.revision + 1);
  CHECK(f.doc.snapshot().nodes == before.nodes);
  CHECK(styles.change.empty());
  CHECK_FALSE(styles.data.is_null());
}

TEST_CASE("copy_style transfers visual properties only") {
  Fixture f;
  auto src = ok(f.doc, "create_rectangle",
                Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0},
                     {"fill", Json::array({0.5, 0.5, 0.5})}, {"corner_radius", 6.0}})
                 .created_ids.front();
  ok(f.doc, "set_opacity", Json{{"node", src}, {"opacity", 0.7}});
  auto dst = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 30.0}, {"height", 30.0}})
                 .created_ids.front();
  ok(f.doc, "copy_style", Json{{"source", src}, {"target", dst}});
  CHECK(f.doc.at(dst).props.at("fill") == f.doc.at(src).props.at("fill"));
  CHECK(f.doc.at(dst).num("corner_radius") == doctest::Approx(6.0));
  CHECK(f.doc.at(dst).num("opacity") == doctest::Approx(0.7));
  CHECK(f.doc.at(dst).num("width") == doctest::Approx(30.0));  // geometry untouched
}

TEST_CASE("text tools apply only to text nodes") {
  Fixture f;
  auto text = ok(f.doc, "create_text",
                 Json{{"parent", f.frame}, {"text", "hi"}, {"font_size", 16.0}})
                  .created_ids.front();
  ok(f.doc, "set_text_content", Json{{"node", text}, {"text", "hello"}});
  CHECK(f.doc.at(text).str("text") == "hello");
  ok(f.doc, "set_text_properties", Json{{"node", text}, {"font_size", 24.0}, {"text_align", "center"}});
  CHECK(f.doc.at(text).num("font_size") == doctest::Approx(24.0));
  ok(f.doc, "set_text_font", Json{{"node", text}, {"family", "Inter"}, {"style", "Bold"}});
  CHECK(f.doc.at(text).str("font_family") == "Inter");
  ok(f.doc, "set_text_decoration", Json{{"node", text}, {"decoration", "underline"}});
  CHECK(f.doc.at(text).str("text_decoration") == "underline");

  auto rect = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 5.0}, {"height", 5.0}})
                  .created_ids.front();
  auto r = f.doc.apply(call("set_text_content", Json{{"node", rect}, {"text", "nope"}}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.error.has_value());
  CHECK(*r.error == ToolError::InvalidParam);
}

TEST_CASE("layout tools require auto-layout where it matters") {
  Fixture f;
  auto stack = ok(f.doc, "create_frame",
                  Json{{"parent", f.frame}, {"width", 300.0}, {"height", 100.0},
                       {"layout_mode", "vertical"}, {"item_spacing", 12.0}})
                   .created_ids.front();
  CHECK(f.doc.at(stack).is_auto_layout());
  ok(f.doc, "set_item_spacing", Json{{"node", stack}, {"spacing", 20.0}});
  CHECK(f.doc.at(stack).num("item_spacing") == doctest::Approx(20.0));
  ok(f.doc, "set_padding", Json{{"node", stack}, {"all", 16.0}});
  auto pad = f.doc.at(stack).props.at("padding");
  REQUIRE(pad.is_object());
  for (const char* side : {"top", "right", "bottom", "left"}) {
    CHECK(pad.at(side).get<double>() == doctest::Approx(16.0));
  }
  ok(f.doc, "set_axis_align", Json{{"node", stack}, {"primary", "center"}, {"counter", "min"}});
  ok(f.doc, "set_layout_mode", Json{{"node", stack}, {"mode", "none"}});
  CHECK_FALSE(f.doc.at(stack).is_auto_layout());
  // Layout props stick to frames even while layout mode is off...
  CHECK(f.doc.apply(call("set_item_spacing", Json{{"node", stack}, {"spacing", 5.0}})).ok);
  // ...but never apply to non-frames.
  auto leaf = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 5.0}, {"height", 5.0}})
                  .created_ids.front();
  auto r = f.doc.apply(call("set_item_spacing", Json{{"node", leaf}, {"spacing", 5.0}}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.error.has_value());
  CHECK(*r.error == ToolError::InvalidParam);
}

TEST_CASE("boolean_nodes wraps members under a composite") {
  Fixture f;
  auto a = ok(f.doc, "create_ellipse", Json{{"parent", f.frame}, {"width", 20.0}, {"height", 20.0}})
               .created_ids.front();
  auto b = ok(f.doc, "create_ellipse", Json{{"parent", f.frame}, {"width", 20.0}, {"height", 20.0}})
               .created_ids.front();
  auto r = ok(f.doc, "boolean_nodes", Json{{"nodes", Json::array({a, b})}, {"operation", "union"}});
  REQUIRE(r.created_ids.size() == 1);
  const auto& composite = f.doc.at(r.created_ids.front());
  CHECK(composite.kind == NodeKind::BooleanComposite);
  CHECK(composite.str("boolean_op") == "union");
  CHECK(f.doc.children(r.created_ids.front()) == std::vector<NodeId>{a, b});
}

TEST_CASE("shape creations carry their defining parameters") {
  Fixture f;
  auto poly = ok(f.doc, "create_polygon",
                 Json{{"parent", f.frame}, {"width", 40.0}, {"height", 40.0}, {"sides", 6.0}})
                  .created_ids.front();
  CHECK(f.doc.at(poly).num("sides") == doctest::Approx(6.0));
  auto star = ok(f.doc, "create_star",
                 Json{{"parent", f.frame}, {"width", 40.0}, {"height", 40.0}, {"points", 5.0}})
                  .created_ids.front();
  CHECK(f.doc.at(star).kind == NodeKind::Star);
  auto line = ok(f.doc, "create_line",
                 Json{{"parent", f.frame}, {"x1", 0.0}, {"y1", 0.0}, {"x2", 50.0}, {"y2", 0.0}})
                  .created_ids.front();
  CHECK(f.doc.at(line).kind == NodeKind::Line);
  auto graphic = ok(f.doc, "create_graphic",
                    Json{{"parent", f.frame}, {"svg", "<svg/>"}, {"width", 24.0}, {"height", 24.0}})
                     .created_ids.front();
  CHECK(f.doc.at(graphic).kind == NodeKind::Graphic);
  auto bad = f.doc.apply(call("create_polygon",
                              Json{{"parent", f.frame}, {"width", 40.0}, {"height", 40.0}, {"sides", 2.0}}));
  CHECK_FALSE(bad.ok);
}

TEST_CASE("create_frame_from_node wraps an existing node") {
  Fixture f;
  auto rect = ok(f.doc, "create_rectangle",
                 Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}, {"x", 5.0}, {"y", 6.0}})
                  .created_ids.front();
  auto r = ok(f.doc, "create_frame_from_node", Json{{"node", rect}});
  REQUIRE(r.created_ids.size() == 1);
  const auto wrapper = r.created_ids.front();
  CHECK(f.doc.at(wrapper).kind == NodeKind::Frame);
  REQUIRE(f.doc.at(rect).parent.has_value());
  CHECK(*f.doc.at(rect).parent == wrapper);
  REQUIRE(f.doc.at(wrapper).parent.has_value());
  CHECK(*f.doc.at(wrapper).parent == f.frame);
}

TEST_CASE("rename, rotate, resize, reorder") {
  Fixture f;
  auto rect = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}})
                  .created_ids.front();
  auto other = ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}})
                   .created_ids.front();
  ok(f.doc, "rename_node", Json{{"node", rect}, {"name", "badge"}});
  CHECK(f.doc.at(rect).name() == "badge");
  ok(f.doc, "rotate_node", Json{{"node", rect}, {"degrees", 45.0}});
  CHECK(f.doc.at(rect).num("rotation") == doctest::Approx(45.0));
  ok(f.doc, "resize_node", Json{{"node", rect}, {"width", 42.0}, {"height", 24.0}});
  CHECK(f.doc.at(rect).num("width") == doctest::Approx(42.0));
  ok(f.doc, "reorder_node", Json{{"node", other}, {"index", 0.0}});
  CHECK(f.doc.at(other).index == 0);
  CHECK(f.doc.at(rect).index == 1);
  auto bad = f.doc.apply(call("reorder_node", Json{{"node", other}, {"index", 99.0}}));
  CHECK_FALSE(bad.ok);
}

TEST_CASE("validate is clean on a healthy document") {
  Fixture f;
  ok(f.doc, "create_rectangle", Json{{"parent", f.frame}, {"width", 10.0}, {"height", 10.0}});
  CHECK(f.doc.validate().empty());
}
