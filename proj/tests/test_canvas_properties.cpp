#include "doctest.h"

#include <map>
#include <string>

#include "canvas/diff.hpp"
#include "canvas/document.hpp"
#include "canvas/layout.hpp"
#include "canvas/tools.hpp"
#include "op_fuzzer.hpp"
#include "support/rng.hpp"

using namespace coact::canvas;
using coact::Rng;

namespace {

// Every auto-layout frame stacks its children strictly by sibling index:
// the projection must place a lower index at or before a higher one on the
// stacking axis, and at a strictly smaller coordinate once spacing or the
// earlier child's extent is positive.
void check_auto_layout_order(const CanvasSnapshot& snap) {
  const auto boxes = project_layout(snap);
  for (const auto& [id, node] : snap.nodes) {
    if (!node.is_auto_layout()) continue;
    const bool horizontal = node.str("layout_mode") == "horizontal";
    const double spacing = node.num("item_spacing");
    const auto kids = snap.children(id);
    for (std::size_t i = 1; i < kids.size(); ++i) {
      const auto& prev = boxes.at(kids[i - 1]);
      const auto& cur = boxes.at(kids[i]);
      const double lo = horizontal ? prev.x : prev.y;
      const double hi = horizontal ? cur.x : cur.y;
      const double extent = horizontal ? prev.width : prev.height;
      CAPTURE(id);
      CAPTURE(i);
      CHECK(lo <= hi);
      if (extent + spacing > 0.0) CHECK(lo < hi);
    }
  }
}

}  // namespace

TEST_CASE("random op sequences preserve hierarchy, layout order and diff round-trips") {
  constexpr int kSequences = 600;
  constexpr int kOpsPerSequence = 12;
  int applied = 0;
  int rejected = 0;

  for (int seq = 0; seq < kSequences; ++seq) {
    Rng rng(Rng::derive(0x5eedf00d, static_cast<std::uint64_t>(seq)));
    CanvasDocument doc{"fuzz"};
    fuzz::OpFuzzer gen(doc, rng);
    const CanvasSnapshot first = doc.snapshot();
    CanvasSnapshot prev = first;

    for (int op = 0; op < kOpsPerSequence; ++op) {
      const ToolCall call = gen.next();
      const ToolResult r = doc.apply(call);
      const CanvasSnapshot now = doc.snapshot();
      CAPTURE(seq);
      CAPTURE(op);
      CAPTURE(call.tool);
      if (!r.ok) {
        ++rejected;
        // A rejected call must leave the document untouched.
        CHECK(now == prev);
        continue;
      }
      ++applied;
      CHECK(now.revision == prev.revision + 1);
      CHECK(doc.validate().empty());
      check_auto_layout_order(now);
      // The reported change set replays the previous state into the new one.
      CHECK(apply_changeset(prev, r.change).nodes == now.nodes);
      // And the full diff agrees with the per-op report.
      CHECK(apply_changeset(prev, diff(prev, now)).nodes == now.nodes);
      prev = now;
    }

    // Whole-sequence round trip: one diff spanning every surviving edit.
    const CanvasSnapshot last = doc.snapshot();
    CHECK(apply_changeset(first, diff(first, last)).nodes == last.nodes);
    CHECK(diff(last, last).empty());
  }

  // The generator must actually exercise both paths.
  CHECK(applied > kSequences);
  CHECK(rejected > 0);
  MESSAGE("applied ", applied, " ops, rejected ", rejected);
}

TEST_CASE("auto-layout places lower indices to the left or top regardless of own coordinates") {
  CanvasDocument doc{"lay"};
  ToolCall make;
  make.actor = Actor::Agent;
  make.tool = "create_frame";
  make.params = Json{{"parent", doc.root()}, {"top_level", true}, {"width", 400.0},
                     {"height", 300.0},      {"layout_mode", "horizontal"}, {"item_spacing", 8.0}};
  auto fr = doc.apply(make);
  REQUIRE(fr.ok);
  const NodeId frame = fr.created_ids.front();

  // Children born with deliberately reversed x coordinates.
  std::vector<NodeId> kids;
  for (int i = 0; i < 4; ++i) {
    ToolCall c;
    c.actor = Actor::Agent;
    c.tool = "create_rectangle";
    c.params = Json{{"parent", frame}, {"width", 40.0}, {"height", 40.0}, {"x", 1000.0 - 250.0 * i}};
    auto r = doc.apply(c);
    REQUIRE(r.ok);
    kids.push_back(r.created_ids.front());
  }

  auto boxes = project_layout(doc.snapshot());
  for (std::size_t i = 1; i < kids.size(); ++i) {
    CHECK(boxes.at(kids[i - 1]).x < boxes.at(kids[i]).x);  // index order wins, not x props
    CHECK(boxes.at(kids[i - 1]).y == boxes.at(kids[i]).y);
  }

  // Reordering a child to index 0 moves it to the far left of the row.
  ToolCall re;
  re.actor = Actor::User;
  re.tool = "reorder_node";
  re.params = Json{{"node", kids.back()}, {"index", 0.0}};
  REQUIRE(doc.apply(re).ok);
  boxes = project_layout(doc.snapshot());
  for (const auto& other : kids) {
    if (other == kids.back()) continue;
    CHECK(boxes.at(kids.back()).x < boxes.at(other).x);
  }

  // Vertical mode stacks by index top to bottom.
  ToolCall vert;
  vert.actor = Actor::Agent;
  vert.tool = "set_layout_mode";
  vert.params = Json{{"node", frame}, {"mode", "vertical"}};
  REQUIRE(doc.apply(vert).ok);
  boxes = project_layout(doc.snapshot());
  const auto order = doc.children(frame);
  for (std::size_t i = 1; i < order.size(); ++i) {
    CHECK(boxes.at(order[i - 1]).y < boxes.at(order[i]).y);
  }
}
