#include "canvas/tools.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "canvas/diff.hpp"

namespace coact::canvas {
namespace {

struct ToolFail {
  ToolError error;
  std::string message;
};

[[noreturn]] void fail(ToolError error, std::string message) { throw ToolFail{error, std::move(message)}; }

Json jnum(double v) { return Json(v); }  // all numeric properties are stored as doubles

double text_line_width(const std::string& text, double font_size) {
  std::size_t longest = 0, current = 0;
  for (char c : text) {
    if (c == '\n') {
      longest = std::max(longest, current);
      current = 0;
    } else {
      ++current;
    }
  }
  longest = std::max(longest, current);
  return std::max(1.0, 0.6 * font_size * static_cast<double>(longest));
}

double text_block_height(const std::string& text, double font_size, double line_height) {
  double lines = 1.0 + static_cast<double>(std::count(text.begin(), text.end(), '\n'));
  return font_size * line_height * lines;
}

}  // namespace

const char* tool_group_name(ToolGroup group) {
  switch (group) {
    case ToolGroup::Text: return "text";
    case ToolGroup::Operation: return "operation";
    case ToolGroup::Style: return "style";
    case ToolGroup::Layout: return "layout";
    case ToolGroup::Create: return "create";
  }
  return "unknown";
}

const std::vector<ToolSpec>& tool_catalogue() {
  static const std::vector<ToolSpec> catalogue = {
      // text
      {"set_text_content", ToolGroup::Text},
      {"set_text_properties", ToolGroup::Text},
      {"set_text_decoration", ToolGroup::Text},
      {"set_text_font", ToolGroup::Text},
      // operation
      {"move_node", ToolGroup::Operation},
      {"move_node_into_frame", ToolGroup::Operation},
      {"clone_node", ToolGroup::Operation},
      {"resize_node", ToolGroup::Operation},
      {"delete_node", ToolGroup::Operation},
      {"group_nodes", ToolGroup::Operation},
      {"ungroup_nodes", ToolGroup::Operation},
      {"rename_node", ToolGroup::Operation},
      {"rotate_node", ToolGroup::Operation},
      {"boolean_nodes", ToolGroup::Operation},
      {"reorder_node", ToolGroup::Operation},
      // style
      {"set_fill_color", ToolGroup::Style},
      {"set_corner_radius", ToolGroup::Style},
      {"get_styles", ToolGroup::Style},
      {"set_opacity", ToolGroup::Style},
      {"set_stroke", ToolGroup::Style},
      {"set_fill_gradient", ToolGroup::Style},
      {"set_drop_shadow", ToolGroup::Style},
      {"set_inner_shadow", ToolGroup::Style},
      {"copy_style", ToolGroup::Style},
      // layout
      {"set_padding", ToolGroup::Layout},
      {"set_axis_align", ToolGroup::Layout},
      {"set_layout_sizing", ToolGroup::Layout},
      {"set_item_spacing", ToolGroup::Layout},
      {"set_layout_mode", ToolGroup::Layout},
      // create
      {"create_rectangle", ToolGroup::Create},
      {"create_frame", ToolGroup::Create},
      {"create_frame_from_node", ToolGroup::Create},
      {"create_text", ToolGroup::Create},
      {"create_graphic", ToolGroup::Create},
      {"create_ellipse", ToolGroup::Create},
      {"create_polygon", ToolGroup::Create},
      {"create_star", ToolGroup::Create},
      {"create_line", ToolGroup::Create},
  };
  return catalogue;
}

bool is_known_tool(const std::string& name) {
  const auto& cat = tool_catalogue();
  return std::any_of(cat.begin(), cat.end(), [&](const ToolSpec& s) { return s.name == name; });
}

bool is_create_tool(const std::string& name) {
  const auto& cat = tool_catalogue();
  auto it = std::find_if(cat.begin(), cat.end(), [&](const ToolSpec& s) { return s.name == name; });
  return it != cat.end() && it->group == ToolGroup::Create;
}

// Executes a single call against the live node table. Handlers validate
// before they mutate where practical; apply() restores the saved state on any
// ToolFail, so partial work never leaks out of a rejected call.
struct ToolExec {
  CanvasDocument& doc;
  const Json& params;
  ToolResult& result;

  std::map<NodeId, CanvasNode>& nodes() { return doc.nodes_; }

  // ---- parameter access -------------------------------------------------

  void allow_only(std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : params.items()) {
      bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
      if (!known) fail(ToolError::InvalidParam, "unexpected parameter '" + key + "'");
    }
  }

  const Json& require(const char* key) {
    if (!params.contains(key)) fail(ToolError::InvalidParam, std::string("missing parameter '") + key + "'");
    return params.at(key);
  }

  std::string str_param(const char* key) {
    const Json& v = require(key);
    if (!v.is_string()) fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a string");
    return v.get<std::string>();
  }

  double num_param(const char* key) {
    const Json& v = require(key);
    if (!v.is_number()) fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
  }

  std::optional<std::string> opt_str(const char* key) {
    if (!params.contains(key)) return std::nullopt;
    const Json& v = params.at(key);
    if (!v.is_string()) fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<double> opt_num(const char* key) {
    if (!params.contains(key)) return std::nullopt;
    const Json& v = params.at(key);
    if (!v.is_number()) fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
  }

  std::optional<bool> opt_bool(const char* key) {
    if (!params.contains(key)) return std::nullopt;
    const Json& v = params.at(key);
    if (!v.is_boolean()) fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a boolean");
    return v.get<bool>();
  }

  std::string enum_param(const char* key, std::initializer_list<const char*> values) {
    std::string v = str_param(key);
    if (std::none_of(values.begin(), values.end(), [&](const char* s) { return v == s; }))
      fail(ToolError::InvalidParam, std::string("parameter '") + key + "' has unsupported value '" + v + "'");
    return v;
  }

  std::optional<std::string> opt_enum(const char* key, std::initializer_list<const char*> values) {
    if (!params.contains(key)) return std::nullopt;
    return enum_param(key, values);
  }

  NodeId id_param(const char* key) {
    const Json& v = require(key);
    if (!v.is_string() || v.get<std::string>().empty())
      fail(ToolError::InvalidParam, std::string("parameter '") + key + "' must be a node id");
    return v.get<std::string>();
  }

  CanvasNode& node_param(const char* key) {
    NodeId id = id_param(key);
    auto it = nodes().find(id);
    if (it == nodes().end()) fail(ToolError::MissingNode, "node " + id + " does not exist");
    return it->second;
  }

  std::vector<NodeId> id_list_param(const char* single_key, const char* list_key) {
    std::vector<NodeId> ids;
    if (params.contains(list_key)) {
      const Json& v = params.at(list_key);
      if (!v.is_array() || v.empty())
        fail(ToolError::InvalidParam, std::string("parameter '") + list_key + "' must be a non-empty array");
      for (const auto& e : v) {
        if (!e.is_string()) fail(ToolError::InvalidParam, std::string("'") + list_key + "' entries must be node ids");
        ids.push_back(e.get<std::string>());
      }
    } else if (params.contains(single_key)) {
      ids.push_back(id_param(single_key));
    } else {
      fail(ToolError::InvalidParam,
           std::string("one of '") + single_key + "' or '" + list_key + "' is required");
    }
    std::vector<NodeId> unique;
    for (const auto& id : ids)
      if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
    for (const auto& id : unique)
      if (!nodes().count(id)) fail(ToolError::MissingNode, "node " + id + " does not exist");
    return unique;
  }

  double color_channel(const char* key) {
    double v = num_param(key);
    if (v < 0.0 || v > 1.0) fail(ToolError::InvalidParam, std::string("'") + key + "' must be in [0, 1]");
    return v;
  }

  Json rgba_param() {
    double r = color_channel("r"), g = color_channel("g"), b = color_channel("b");
    double a = 1.0;
    if (auto v = opt_num("a")) {
      a = *v;
      if (a < 0.0 || a > 1.0) fail(ToolError::InvalidParam, "'a' must be in [0, 1]");
    }
    return Json::array({jnum(r), jnum(g), jnum(b), jnum(a)});
  }

  // ---- structural helpers ----------------------------------------------

  CanvasNode& node_at(const NodeId& id) { return nodes().at(id); }

  std::vector<NodeId> children_of(const NodeId& parent) { return doc.children(parent); }

  bool in_subtree(const NodeId& candidate, const NodeId& ancestor) {
    NodeId cur = candidate;
    while (true) {
      if (cur == ancestor) return true;
      auto it = nodes().find(cur);
      if (it == nodes().end() || !it->second.parent) return false;
      cur = *it->second.parent;
    }
  }

  void reindex_children(const NodeId& parent) {
    auto kids = children_of(parent);
    for (std::size_t i = 0; i < kids.size(); ++i) node_at(kids[i]).index = static_cast<int>(i);
  }

  // Detach from current parent and close the gap.
  void detach(const NodeId& id) {
    CanvasNode& node = node_at(id);
    if (!node.parent) return;
    NodeId old_parent = *node.parent;
    node.parent.reset();
    reindex_children(old_parent);
  }

  // Attach under `parent` at `index` (append when nullopt), shifting siblings.
  void attach(const NodeId& id, const NodeId& parent, std::optional<int> index) {
    auto kids = children_of(parent);
    int n = static_cast<int>(kids.size());
    int at = index.value_or(n);
    if (at < 0 || at > n) fail(ToolError::InvalidParam, "index out of range");
    for (const auto& kid : kids) {
      CanvasNode& sibling = node_at(kid);
      if (sibling.index >= at) ++sibling.index;
    }
    CanvasNode& node = node_at(id);
    node.parent = parent;
    node.index = at;
  }

  CanvasNode& container_param(const char* key) {
    CanvasNode& node = node_param(key);
    if (!node.is_container())
      fail(ToolError::InvalidParam, "node " + node.id + " is not a frame or group");
    return node;
  }

  void refresh_text_extent(CanvasNode& node) {
    Json sizing = node.props.count(prop::kSizing) ? node.props[prop::kSizing] : Json::object();
    bool hug_w = sizing.value("horizontal", "hug") == std::string("hug");
    bool hug_h = sizing.value("vertical", "hug") == std::string("hug");
    std::string text = node.str(prop::kText);
    double fs = node.num(prop::kFontSize, 16.0);
    double lh = node.num(prop::kLineHeight, 1.2);
    if (hug_w) node.props[prop::kWidth] = jnum(text_line_width(text, fs));
    if (hug_h) node.props[prop::kHeight] = jnum(text_block_height(text, fs, lh));
  }

  // ---- create helpers ---------------------------------------------------

  // Shared create path: validates the common parameters (type errors first,
  // node resolution second), honours the explicit top-level gate at the page
  // root, allocates the id, seeds common geometry props.
  CanvasNode& create_common(NodeKind kind, const std::string& default_name,
                            std::initializer_list<const char*> extra_keys) {
    std::vector<const char*> allowed = {"parent", "index", "name", "x", "y", "top_level"};
    allowed.insert(allowed.end(), extra_keys.begin(), extra_keys.end());
    for (const auto& [key, value] : params.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
        fail(ToolError::InvalidParam, "unexpected parameter '" + key + "'");
    }

    bool top_level = opt_bool("top_level").value_or(false);
    std::optional<int> index;
    if (auto v = opt_num("index")) {
      double d = *v;
      if (d != std::floor(d)) fail(ToolError::InvalidParam, "index must be an integer");
      index = static_cast<int>(d);
    }
    std::string name = opt_str("name").value_or(default_name);
    double x = opt_num("x").value_or(0.0), y = opt_num("y").value_or(0.0);

    CanvasNode& parent = container_param("parent");
    if (parent.id == doc.root()) {
      if (!top_level)
        fail(ToolError::RootLevelCreate,
             "creating directly on the page requires the top_level flag");
    } else if (top_level) {
      fail(ToolError::InvalidParam, "top_level only applies at the page root");
    }

    CanvasNode node;
    node.id = doc.fresh_id();
    node.kind = kind;
    node.props[prop::kName] = name;
    node.props[prop::kX] = jnum(x);
    node.props[prop::kY] = jnum(y);
    NodeId id = node.id;
    NodeId parent_id = parent.id;
    nodes().emplace(id, std::move(node));
    attach(id, parent_id, index);
    result.created_ids.push_back(id);
    return node_at(id);
  }

  std::optional<Json> parse_opt_fill() {
    if (!params.contains("fill")) return std::nullopt;
    const Json& v = params.at("fill");
    if (!v.is_array() || (v.size() != 3 && v.size() != 4))
      fail(ToolError::InvalidParam, "'fill' must be an [r, g, b] or [r, g, b, a] array");
    Json rgba = Json::array();
    for (const auto& c : v) {
      if (!c.is_number() || c.get<double>() < 0.0 || c.get<double>() > 1.0)
        fail(ToolError::InvalidParam, "'fill' channels must be numbers in [0, 1]");
      rgba.push_back(jnum(c.get<double>()));
    }
    if (rgba.size() == 3) rgba.push_back(jnum(1.0));
    return Json{{"type", "solid"}, {"rgba", std::move(rgba)}};
  }

  // ---- handlers: text ---------------------------------------------------

  void set_text_content() {
    allow_only({"node", "nodes", "text"});
    std::string text = str_param("text");
    auto ids = id_list_param("node", "nodes");
    for (const auto& id : ids)
      if (node_at(id).kind != NodeKind::Text)
        fail(ToolError::InvalidParam, "node " + id + " is not a text node");
    for (const auto& id : ids) {
      CanvasNode& node = node_at(id);
      node.props[prop::kText] = text;
      refresh_text_extent(node);
    }
  }

  void set_text_properties() {
    allow_only({"node", "font_size", "line_height", "letter_spacing", "text_align"});
    auto font_size = opt_num("font_size");
    auto line_height = opt_num("line_height");
    auto letter_spacing = opt_num("letter_spacing");
    auto text_align = opt_enum("text_align", {"left", "center", "right", "justified"});
    if (!font_size && !line_height && !letter_spacing && !text_align)
      fail(ToolError::InvalidParam, "at least one text property is required");
    if (font_size && *font_size <= 0.0) fail(ToolError::InvalidParam, "'font_size' must be positive");
    if (line_height && *line_height <= 0.0) fail(ToolError::InvalidParam, "'line_height' must be positive");
    CanvasNode& node = node_param("node");
    if (node.kind != NodeKind::Text) fail(ToolError::InvalidParam, "node " + node.id + " is not a text node");
    if (font_size) node.props[prop::kFontSize] = jnum(*font_size);
    if (line_height) node.props[prop::kLineHeight] = jnum(*line_height);
    if (letter_spacing) node.props[prop::kLetterSpacing] = jnum(*letter_spacing);
    if (text_align) node.props[prop::kTextAlign] = *text_align;
    if (font_size || line_height) refresh_text_extent(node);
  }

  void set_text_decoration() {
    allow_only({"node", "decoration", "text_case"});
    auto decoration = opt_enum("decoration", {"none", "underline", "strikethrough"});
    auto text_case = opt_enum("text_case", {"original", "upper", "lower", "title"});
    if (!decoration && !text_case)
      fail(ToolError::InvalidParam, "at least one of 'decoration' or 'text_case' is required");
    CanvasNode& node = node_param("node");
    if (node.kind != NodeKind::Text) fail(ToolError::InvalidParam, "node " + node.id + " is not a text node");
    if (decoration) node.props[prop::kTextDecoration] = *decoration;
    if (text_case) node.props[prop::kTextCase] = *text_case;
  }

  void set_text_font() {
    allow_only({"node", "family", "style"});
    std::string family = str_param("family");
    std::string style = str_param("style");
    CanvasNode& node = node_param("node");
    if (node.kind != NodeKind::Text) fail(ToolError::InvalidParam, "node " + node.id + " is not a text node");
    node.props[prop::kFontFamily] = family;
    node.props[prop::kFontStyle] = style;
  }

  // ---- handlers: operation ---------------------------------------------

  void move_node() {
    allow_only({"node", "x", "y", "parent"});
    double x = num_param("x"), y = num_param("y");
    CanvasNode& node = node_param("node");
    if (node.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be moved");
    NodeId current_parent = *node.parent;
    if (node_at(current_parent).is_auto_layout())
      fail(ToolError::MoveInsideAutoLayout,
           "node " + node.id + " sits in an auto-layout frame; free positioning is unavailable");
    NodeId id = node.id;
    if (params.contains("parent")) {
      CanvasNode& target = container_param("parent");
      if (target.is_auto_layout())
        fail(ToolError::MoveInsideAutoLayout,
             "frame " + target.id + " is auto-layout; free positioning is unavailable");
      if (in_subtree(target.id, id)) fail(ToolError::InvalidParam, "cannot move a node into its own subtree");
      NodeId target_id = target.id;
      if (target_id != current_parent) {
        detach(id);
        attach(id, target_id, std::nullopt);
      }
    }
    CanvasNode& moved = node_at(id);
    moved.props[prop::kX] = jnum(x);
    moved.props[prop::kY] = jnum(y);
  }

  void move_node_into_frame() {
    allow_only({"node", "frame", "index"});
    std::optional<int> index;
    if (auto v = opt_num("index")) {
      if (*v != std::floor(*v)) fail(ToolError::InvalidParam, "index must be an integer");
      index = static_cast<int>(*v);
    }
    CanvasNode& node = node_param("node");
    CanvasNode& frame = node_param("frame");
    if (node.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be moved");
    if (frame.kind != NodeKind::Frame) fail(ToolError::InvalidParam, "node " + frame.id + " is not a frame");
    if (node.id == frame.id || in_subtree(frame.id, node.id))
      fail(ToolError::InvalidParam, "cannot move a node into its own subtree");
    NodeId id = node.id, frame_id = frame.id;
    detach(id);
    attach(id, frame_id, index);
  }

  void clone_node() {
    allow_only({"node", "parent", "index", "x", "y"});
    std::optional<int> index;
    if (auto v = opt_num("index")) {
      if (*v != std::floor(*v)) fail(ToolError::InvalidParam, "index must be an integer");
      index = static_cast<int>(*v);
    }
    opt_num("x");
    opt_num("y");
    CanvasNode& source = node_param("node");
    if (source.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be cloned");
    NodeId target_parent = source.parent.value_or(doc.root());
    if (params.contains("parent")) target_parent = container_param("parent").id;
    NodeId source_id = source.id;
    if (in_subtree(target_parent, source_id))
      fail(ToolError::InvalidParam, "cannot clone a node into its own subtree");

    // Deep copy, preorder, with fresh ids.
    std::map<NodeId, NodeId> remap;
    auto order = doc.subtree(source_id);
    for (const auto& old_id : order) remap[old_id] = doc.fresh_id();
    for (const auto& old_id : order) {
      CanvasNode copy = node_at(old_id);
      copy.id = remap[old_id];
      if (old_id == source_id) {
        copy.parent.reset();  // attached below
      } else {
        copy.parent = remap[*copy.parent];
      }
      nodes().emplace(copy.id, std::move(copy));
      result.created_ids.push_back(remap[old_id]);
    }
    NodeId clone_root = remap[source_id];
    attach(clone_root, target_parent, index);
    CanvasNode& attached = node_at(clone_root);
    if (auto v = opt_num("x")) attached.props[prop::kX] = jnum(*v);
    if (auto v = opt_num("y")) attached.props[prop::kY] = jnum(*v);
  }

  void resize_node() {
    allow_only({"node", "width", "height"});
    double w = num_param("width"), h = num_param("height");
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    CanvasNode& node = node_param("node");
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    if (node.kind == NodeKind::Text)
      node.props[prop::kSizing] = Json{{"horizontal", "fixed"}, {"vertical", "fixed"}};
  }

  void delete_node() {
    allow_only({"node", "nodes"});
    auto ids = id_list_param("node", "nodes");
    for (const auto& id : ids)
      if (id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be deleted");
    std::set<NodeId> doomed;
    for (const auto& id : ids)
      for (const auto& member : doc.subtree(id)) doomed.insert(member);
    std::set<NodeId> parents;
    for (const auto& id : doomed) {
      const CanvasNode& node = node_at(id);
      if (node.parent && !doomed.count(*node.parent)) parents.insert(*node.parent);
    }
    for (const auto& id : doomed) nodes().erase(id);
    for (const auto& parent : parents) reindex_children(parent);
  }

  void group_nodes() {
    allow_only({"nodes", "name"});
    opt_str("name");
    auto ids = id_list_param("nodes", "nodes");
    if (ids.size() < 2) fail(ToolError::InvalidParam, "grouping requires at least two nodes");
    for (const auto& id : ids)
      if (id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be grouped");
    NodeId shared_parent = *node_at(ids[0]).parent;
    for (const auto& id : ids)
      if (*node_at(id).parent != shared_parent)
        fail(ToolError::InvalidParam, "nodes must share a parent to be grouped");

    // Keep the members' existing left-to-right order inside the group.
    std::vector<NodeId> ordered = ids;
    std::sort(ordered.begin(), ordered.end(),
              [&](const NodeId& a, const NodeId& b) { return node_at(a).index < node_at(b).index; });
    int slot = node_at(ordered.front()).index;

    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool first = true;
    for (const auto& id : ordered) {
      const CanvasNode& n = node_at(id);
      double x = n.num(prop::kX), y = n.num(prop::kY);
      double r = x + n.num(prop::kWidth), b = y + n.num(prop::kHeight);
      if (first) {
        min_x = x; min_y = y; max_x = r; max_y = b;
        first = false;
      } else {
        min_x = std::min(min_x, x); min_y = std::min(min_y, y);
        max_x = std::max(max_x, r); max_y = std::max(max_y, b);
      }
    }

    CanvasNode group;
    group.id = doc.fresh_id();
    group.kind = NodeKind::Group;
    group.props[prop::kName] = opt_str("name").value_or("group");
    group.props[prop::kX] = jnum(min_x);
    group.props[prop::kY] = jnum(min_y);
    group.props[prop::kWidth] = jnum(std::max(1.0, max_x - min_x));
    group.props[prop::kHeight] = jnum(std::max(1.0, max_y - min_y));
    NodeId group_id = group.id;
    nodes().emplace(group_id, std::move(group));
    result.created_ids.push_back(group_id);

    for (const auto& id : ordered) {
      CanvasNode& member = node_at(id);
      member.parent = group_id;
    }
    int i = 0;
    for (const auto& id : ordered) node_at(id).index = i++;
    reindex_children(shared_parent);  // close the gaps the members left
    attach(group_id, shared_parent, std::min(slot, static_cast<int>(children_of(shared_parent).size())));
  }

  void ungroup_nodes() {
    allow_only({"group"});
    CanvasNode& group = node_param("group");
    if (group.kind != NodeKind::Group) fail(ToolError::InvalidParam, "node " + group.id + " is not a group");
    NodeId group_id = group.id;
    NodeId parent = *group.parent;
    int slot = group.index;
    auto members = children_of(group_id);
    detach(group_id);
    nodes().erase(group_id);
    int at = std::min(slot, static_cast<int>(children_of(parent).size()));
    for (const auto& id : members) {
      attach(id, parent, at);
      ++at;
    }
  }

  void rename_node() {
    allow_only({"node", "name"});
    std::string name = str_param("name");
    CanvasNode& node = node_param("node");
    node.props[prop::kName] = name;
  }

  void rotate_node() {
    allow_only({"node", "degrees"});
    double degrees = num_param("degrees");
    CanvasNode& node = node_param("node");
    if (node.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be rotated");
    node.props[prop::kRotation] = jnum(degrees);
  }

  void boolean_nodes() {
    allow_only({"nodes", "operation", "name"});
    std::string op = enum_param("operation", {"union", "subtract", "intersect", "exclude"});
    auto ids = id_list_param("nodes", "nodes");
    if (ids.size() < 2) fail(ToolError::InvalidParam, "a boolean operation requires at least two nodes");
    NodeId shared_parent;
    for (const auto& id : ids) {
      CanvasNode& n = node_at(id);
      if (id == doc.root() || !n.parent) fail(ToolError::InvalidParam, "the page root cannot be combined");
      switch (n.kind) {
        case NodeKind::Rectangle:
        case NodeKind::Ellipse:
        case NodeKind::Polygon:
        case NodeKind::Star:
        case NodeKind::Line:
        case NodeKind::Graphic:
        case NodeKind::BooleanComposite:
          break;
        default:
          fail(ToolError::InvalidParam, "node " + id + " is not a vector shape");
      }
      if (shared_parent.empty())
        shared_parent = *n.parent;
      else if (*n.parent != shared_parent)
        fail(ToolError::InvalidParam, "nodes must share a parent to be combined");
    }

    int slot = node_at(ids[0]).index;
    for (const auto& id : ids) slot = std::min(slot, node_at(id).index);

    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool first = true;
    for (const auto& id : ids) {
      const CanvasNode& n = node_at(id);
      double x = n.num(prop::kX), y = n.num(prop::kY);
      double r = x + n.num(prop::kWidth), b = y + n.num(prop::kHeight);
      if (first) {
        min_x = x; min_y = y; max_x = r; max_y = b;
        first = false;
      } else {
        min_x = std::min(min_x, x); min_y = std::min(min_y, y);
        max_x = std::max(max_x, r); max_y = std::max(max_y, b);
      }
    }

    CanvasNode composite;
    composite.id = doc.fresh_id();
    composite.kind = NodeKind::BooleanComposite;
    composite.props[prop::kName] = opt_str("name").value_or(op);
    composite.props[prop::kBooleanOp] = op;
    composite.props[prop::kX] = jnum(min_x);
    composite.props[prop::kY] = jnum(min_y);
    composite.props[prop::kWidth] = jnum(std::max(1.0, max_x - min_x));
    composite.props[prop::kHeight] = jnum(std::max(1.0, max_y - min_y));
    NodeId comp_id = composite.id;
    nodes().emplace(comp_id, std::move(composite));
    result.created_ids.push_back(comp_id);

    // Operand order is meaningful (subtract), so children follow the call
    // order rather than the old sibling order.
    for (const auto& id : ids) node_at(id).parent = comp_id;
    int i = 0;
    for (const auto& id : ids) node_at(id).index = i++;
    reindex_children(shared_parent);
    attach(comp_id, shared_parent, std::min(slot, static_cast<int>(children_of(shared_parent).size())));
  }

  void reorder_node() {
    allow_only({"node", "index"});
    double raw = num_param("index");
    if (raw != std::floor(raw)) fail(ToolError::InvalidParam, "index must be an integer");
    int target = static_cast<int>(raw);
    CanvasNode& node = node_param("node");
    if (node.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be reordered");
    NodeId id = node.id;
    NodeId parent = *node.parent;
    int n = static_cast<int>(children_of(parent).size());
    if (target < 0 || target >= n) fail(ToolError::InvalidParam, "index out of range");
    detach(id);
    attach(id, parent, target);
  }

  // ---- handlers: style --------------------------------------------------

  void set_fill_color() {
    allow_only({"node", "r", "g", "b", "a"});
    Json rgba = rgba_param();
    CanvasNode& node = node_param("node");
    node.props[prop::kFill] = Json{{"type", "solid"}, {"rgba", std::move(rgba)}};
  }

  void set_corner_radius() {
    allow_only({"node", "radius"});
    double radius = num_param("radius");
    if (radius < 0.0) fail(ToolError::InvalidParam, "'radius' must be non-negative");
    node_param("node").props[prop::kCornerRadius] = jnum(radius);
  }

  void get_styles() {
    allow_only({});
    Json out = Json::array();
    for (const auto& [name, value] : doc.styles()) out.push_back(Json{{"name", name}, {"value", value}});
    result.data = std::move(out);
  }

  void set_opacity() {
    allow_only({"node", "opacity"});
    double opacity = num_param("opacity");
    if (opacity < 0.0 || opacity > 1.0) fail(ToolError::InvalidParam, "'opacity' must be in [0, 1]");
    CanvasNode& node = node_param("node");
    node.props[prop::kOpacity] = jnum(opacity);
  }

  void set_stroke() {
    allow_only({"node", "r", "g", "b", "a", "weight", "align"});
    Json rgba = rgba_param();
    double weight = num_param("weight");
    if (weight < 0.0) fail(ToolError::InvalidParam, "'weight' must be non-negative");
    std::string align = opt_enum("align", {"inside", "outside", "center"}).value_or("center");
    CanvasNode& node = node_param("node");
    node.props[prop::kStroke] = Json{{"rgba", std::move(rgba)}, {"weight", jnum(weight)}, {"align", align}};
  }

  void set_fill_gradient() {
    allow_only({"node", "gradient_type", "stops"});
    std::string gtype = enum_param("gradient_type", {"linear", "radial", "angular", "diamond"});
    const Json& stops = require("stops");
    if (!stops.is_array() || stops.size() < 2)
      fail(ToolError::InvalidParam, "'stops' must be an array of at least two stops");
    Json norm_stops = Json::array();
    for (const auto& stop : stops) {
      if (!stop.is_object() || !stop.contains("position") || !stop.contains("rgba"))
        fail(ToolError::InvalidParam, "each stop needs 'position' and 'rgba'");
      const Json& pos = stop.at("position");
      if (!pos.is_number() || pos.get<double>() < 0.0 || pos.get<double>() > 1.0)
        fail(ToolError::InvalidParam, "stop 'position' must be in [0, 1]");
      const Json& rgba = stop.at("rgba");
      if (!rgba.is_array() || rgba.size() != 4)
        fail(ToolError::InvalidParam, "stop 'rgba' must be a 4-element array");
      Json channels = Json::array();
      for (const auto& c : rgba) {
        if (!c.is_number() || c.get<double>() < 0.0 || c.get<double>() > 1.0)
          fail(ToolError::InvalidParam, "stop channels must be numbers in [0, 1]");
        channels.push_back(jnum(c.get<double>()));
      }
      norm_stops.push_back(Json{{"position", jnum(pos.get<double>())}, {"rgba", std::move(channels)}});
    }
    CanvasNode& node = node_param("node");
    node.props[prop::kFill] =
        Json{{"type", "gradient"}, {"gradient_type", gtype}, {"stops", std::move(norm_stops)}};
  }

  Json shadow_param() {
    Json rgba = rgba_param();
    double ox = num_param("offset_x"), oy = num_param("offset_y");
    double blur = num_param("blur");
    if (blur < 0.0) fail(ToolError::InvalidParam, "'blur' must be non-negative");
    double spread = opt_num("spread").value_or(0.0);
    return Json{{"rgba", std::move(rgba)},
                {"offset", Json::array({jnum(ox), jnum(oy)})},
                {"blur", jnum(blur)},
                {"spread", jnum(spread)}};
  }

  void set_drop_shadow() {
    allow_only({"node", "r", "g", "b", "a", "offset_x", "offset_y", "blur", "spread"});
    Json shadow = shadow_param();
    node_param("node").props[prop::kDropShadow] = std::move(shadow);
  }

  void set_inner_shadow() {
    allow_only({"node", "r", "g", "b", "a", "offset_x", "offset_y", "blur", "spread"});
    Json shadow = shadow_param();
    node_param("node").props[prop::kInnerShadow] = std::move(shadow);
  }

  void copy_style() {
    allow_only({"source", "target", "targets"});
    CanvasNode& source = node_param("source");
    auto targets = id_list_param("target", "targets");
    static const char* style_keys[] = {prop::kFill,       prop::kStroke,      prop::kCornerRadius,
                                       prop::kOpacity,    prop::kDropShadow,  prop::kInnerShadow};
    NodeId source_id = source.id;
    for (const auto& id : targets) {
      if (id == source_id) continue;
      CanvasNode& target = node_at(id);
      for (const char* key : style_keys) {
        auto it = node_at(source_id).props.find(key);
        if (it != node_at(source_id).props.end())
          target.props[key] = it->second;
        else
          target.props.erase(key);
      }
    }
  }

  // ---- handlers: layout -------------------------------------------------

  CanvasNode& layout_frame_param() {
    CanvasNode& node = node_param("node");
    if (node.kind != NodeKind::Frame)
      fail(ToolError::InvalidParam, "layout properties only apply to frames");
    return node;
  }

  void set_padding() {
    allow_only({"node", "top", "right", "bottom", "left", "all"});
    auto all = opt_num("all");
    auto top = opt_num("top"), right = opt_num("right"), bottom = opt_num("bottom"), left = opt_num("left");
    if (all && (top || right || bottom || left))
      fail(ToolError::InvalidParam, "'all' excludes the per-side parameters");
    if (!all && !top && !right && !bottom && !left)
      fail(ToolError::InvalidParam, "at least one padding value is required");
    for (auto v : {all, top, right, bottom, left})
      if (v && *v < 0.0) fail(ToolError::InvalidParam, "padding must be non-negative");
    CanvasNode& node = layout_frame_param();

    Json padding = node.props.count(prop::kPadding)
                       ? node.props[prop::kPadding]
                       : Json{{"top", 0.0}, {"right", 0.0}, {"bottom", 0.0}, {"left", 0.0}};
    if (all) {
      padding = Json{{"top", jnum(*all)}, {"right", jnum(*all)}, {"bottom", jnum(*all)}, {"left", jnum(*all)}};
    } else {
      if (top) padding["top"] = jnum(*top);
      if (right) padding["right"] = jnum(*right);
      if (bottom) padding["bottom"] = jnum(*bottom);
      if (left) padding["left"] = jnum(*left);
    }
    node.props[prop::kPadding] = std::move(padding);
  }

  void set_axis_align() {
    allow_only({"node", "primary", "counter"});
    auto primary = opt_enum("primary", {"min", "center", "max", "space_between"});
    auto counter = opt_enum("counter", {"min", "center", "max", "baseline"});
    if (!primary && !counter) fail(ToolError::InvalidParam, "at least one axis is required");
    CanvasNode& node = layout_frame_param();
    Json align = node.props.count(prop::kAxisAlign) ? node.props[prop::kAxisAlign]
                                                    : Json{{"primary", "min"}, {"counter", "min"}};
    if (primary) align["primary"] = *primary;
    if (counter) align["counter"] = *counter;
    node.props[prop::kAxisAlign] = std::move(align);
  }

  void set_layout_sizing() {
    allow_only({"node", "horizontal", "vertical"});
    auto horizontal = opt_enum("horizontal", {"fixed", "hug", "fill"});
    auto vertical = opt_enum("vertical", {"fixed", "hug", "fill"});
    if (!horizontal && !vertical) fail(ToolError::InvalidParam, "at least one axis is required");
    CanvasNode& node = node_param("node");  // sizing also applies to auto-layout children
    Json sizing = node.props.count(prop::kSizing) ? node.props[prop::kSizing]
                                                  : Json{{"horizontal", "fixed"}, {"vertical", "fixed"}};
    if (horizontal) sizing["horizontal"] = *horizontal;
    if (vertical) sizing["vertical"] = *vertical;
    node.props[prop::kSizing] = std::move(sizing);
  }

  void set_item_spacing() {
    allow_only({"node", "spacing"});
    double spacing = num_param("spacing");
    if (spacing < 0.0) fail(ToolError::InvalidParam, "'spacing' must be non-negative");
    layout_frame_param().props[prop::kItemSpacing] = jnum(spacing);
  }

  void set_layout_mode() {
    allow_only({"node", "mode", "wrap"});
    std::string mode = enum_param("mode", {"horizontal", "vertical", "none"});
    auto wrap = opt_bool("wrap");
    CanvasNode& node = layout_frame_param();
    node.props[prop::kLayoutMode] = mode;
    if (wrap) node.props[prop::kLayoutWrap] = *wrap;
  }

  // ---- handlers: create -------------------------------------------------

  void create_rectangle() {
    double w = opt_num("width").value_or(100.0), h = opt_num("height").value_or(100.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    auto radius = opt_num("corner_radius");
    if (radius && *radius < 0.0) fail(ToolError::InvalidParam, "'corner_radius' must be non-negative");
    auto fill = parse_opt_fill();
    CanvasNode& node = create_common(NodeKind::Rectangle, "rectangle", {"width", "height", "fill", "corner_radius"});
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    if (radius) node.props[prop::kCornerRadius] = jnum(*radius);
    if (fill) node.props[prop::kFill] = *fill;
  }

  void create_frame() {
    double w = opt_num("width").value_or(100.0), h = opt_num("height").value_or(100.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    std::string mode = opt_enum("layout_mode", {"horizontal", "vertical", "none"}).value_or("none");
    auto spacing = opt_num("item_spacing");
    if (spacing && *spacing < 0.0) fail(ToolError::InvalidParam, "'item_spacing' must be non-negative");
    auto padding = opt_num("padding");
    if (padding && *padding < 0.0) fail(ToolError::InvalidParam, "'padding' must be non-negative");
    auto fill = parse_opt_fill();
    CanvasNode& node = create_common(NodeKind::Frame, "frame",
                                     {"width", "height", "fill", "layout_mode", "item_spacing", "padding"});
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    node.props[prop::kLayoutMode] = mode;
    if (spacing) node.props[prop::kItemSpacing] = jnum(*spacing);
    if (padding)
      node.props[prop::kPadding] = Json{{"top", jnum(*padding)},
                                        {"right", jnum(*padding)},
                                        {"bottom", jnum(*padding)},
                                        {"left", jnum(*padding)}};
    if (fill) node.props[prop::kFill] = *fill;
  }

  void create_frame_from_node() {
    allow_only({"node", "name"});
    CanvasNode& inner = node_param("node");
    if (inner.id == doc.root()) fail(ToolError::InvalidParam, "the page root cannot be wrapped");
    NodeId inner_id = inner.id;
    NodeId parent = *inner.parent;
    int slot = inner.index;
    double x = inner.num(prop::kX), y = inner.num(prop::kY);
    double w = std::max(1.0, inner.num(prop::kWidth)), h = std::max(1.0, inner.num(prop::kHeight));

    CanvasNode frame;
    frame.id = doc.fresh_id();
    frame.kind = NodeKind::Frame;
    frame.props[prop::kName] = opt_str("name").value_or(inner.name() + " frame");
    frame.props[prop::kX] = jnum(x);
    frame.props[prop::kY] = jnum(y);
    frame.props[prop::kWidth] = jnum(w);
    frame.props[prop::kHeight] = jnum(h);
    frame.props[prop::kLayoutMode] = "none";
    NodeId frame_id = frame.id;
    nodes().emplace(frame_id, std::move(frame));
    result.created_ids.push_back(frame_id);

    detach(inner_id);
    attach(frame_id, parent, std::min(slot, static_cast<int>(children_of(parent).size())));
    attach(inner_id, frame_id, 0);
    CanvasNode& wrapped = node_at(inner_id);
    wrapped.props[prop::kX] = jnum(0.0);
    wrapped.props[prop::kY] = jnum(0.0);
  }

  void create_text() {
    std::string text = str_param("text");
    double fs = opt_num("font_size").value_or(16.0);
    if (fs <= 0.0) fail(ToolError::InvalidParam, "'font_size' must be positive");
    std::string family = opt_str("font_family").value_or("Inter");
    std::string style = opt_str("font_style").value_or("Regular");
    auto fill = parse_opt_fill();
    CanvasNode& node = create_common(NodeKind::Text, "text",
                                     {"text", "font_size", "font_family", "font_style", "fill"});
    node.props[prop::kText] = text;
    node.props[prop::kFontSize] = jnum(fs);
    node.props[prop::kFontFamily] = family;
    node.props[prop::kFontStyle] = style;
    node.props[prop::kLineHeight] = jnum(1.2);
    node.props[prop::kSizing] = Json{{"horizontal", "hug"}, {"vertical", "hug"}};
    if (fill) node.props[prop::kFill] = *fill;
    refresh_text_extent(node);
  }

  void create_graphic() {
    std::string svg = str_param("svg");
    if (svg.empty()) fail(ToolError::InvalidParam, "'svg' must be non-empty");
    double w = opt_num("width").value_or(24.0), h = opt_num("height").value_or(24.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    CanvasNode& node = create_common(NodeKind::Graphic, "graphic", {"svg", "width", "height"});
    node.props[prop::kSvg] = svg;
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
  }

  void create_ellipse() {
    double w = opt_num("width").value_or(100.0), h = opt_num("height").value_or(100.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    auto fill = parse_opt_fill();
    CanvasNode& node = create_common(NodeKind::Ellipse, "ellipse", {"width", "height", "fill"});
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    if (fill) node.props[prop::kFill] = *fill;
  }

  void create_polygon() {
    double sides = num_param("sides");
    if (sides != std::floor(sides) || sides < 3) fail(ToolError::InvalidParam, "'sides' must be an integer >= 3");
    double w = opt_num("width").value_or(100.0), h = opt_num("height").value_or(100.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    auto fill = parse_opt_fill();
    CanvasNode& node = create_common(NodeKind::Polygon, "polygon", {"sides", "width", "height", "fill"});
    node.props[prop::kSides] = jnum(sides);
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    if (fill) node.props[prop::kFill] = *fill;
  }

  void create_star() {
    double points = num_param("points");
    if (points != std::floor(points) || points < 3)
      fail(ToolError::InvalidParam, "'points' must be an integer >= 3");
    double ratio = opt_num("inner_radius_ratio").value_or(0.5);
    if (ratio <= 0.0 || ratio > 1.0) fail(ToolError::InvalidParam, "'inner_radius_ratio' must be in (0, 1]");
    double w = opt_num("width").value_or(100.0), h = opt_num("height").value_or(100.0);
    if (w <= 0.0 || h <= 0.0) fail(ToolError::InvalidParam, "width and height must be positive");
    auto fill = parse_opt_fill();
    CanvasNode& node =
        create_common(NodeKind::Star, "star", {"points", "inner_radius_ratio", "width", "height", "fill"});
    node.props[prop::kPoints] = jnum(points);
    node.props[prop::kInnerRadiusRatio] = jnum(ratio);
    node.props[prop::kWidth] = jnum(w);
    node.props[prop::kHeight] = jnum(h);
    if (fill) node.props[prop::kFill] = *fill;
  }

  void create_line() {
    double x1 = num_param("x1"), y1 = num_param("y1");
    double x2 = num_param("x2"), y2 = num_param("y2");
    auto weight = opt_num("stroke_weight");
    if (weight && *weight < 0.0) fail(ToolError::InvalidParam, "'stroke_weight' must be non-negative");
    CanvasNode& node = create_common(NodeKind::Line, "line", {"x1", "y1", "x2", "y2", "stroke_weight"});
    node.props[prop::kX1] = jnum(x1);
    node.props[prop::kY1] = jnum(y1);
    node.props[prop::kX2] = jnum(x2);
    node.props[prop::kY2] = jnum(y2);
    node.props[prop::kX] = jnum(std::min(x1, x2));
    node.props[prop::kY] = jnum(std::min(y1, y2));
    node.props[prop::kWidth] = jnum(std::abs(x2 - x1));
    node.props[prop::kHeight] = jnum(std::abs(y2 - y1));
    if (weight)
      node.props[prop::kStroke] =
          Json{{"rgba", Json::array({0.0, 0.0, 0.0, 1.0})}, {"weight", jnum(*weight)}, {"align", "center"}};
  }

  void run(const std::string& tool) {
    using Handler = void (ToolExec::*)();
    static const std::map<std::string, Handler> handlers = {
        {"set_text_content", &ToolExec::set_text_content},
        {"set_text_properties", &ToolExec::set_text_properties},
        {"set_text_decoration", &ToolExec::set_text_decoration},
        {"set_text_font", &ToolExec::set_text_font},
        {"move_node", &ToolExec::move_node},
        {"move_node_into_frame", &ToolExec::move_node_into_frame},
        {"clone_node", &ToolExec::clone_node},
        {"resize_node", &ToolExec::resize_node},
        {"delete_node", &ToolExec::delete_node},
        {"group_nodes", &ToolExec::group_nodes},
        {"ungroup_nodes", &ToolExec::ungroup_nodes},
        {"rename_node", &ToolExec::rename_node},
        {"rotate_node", &ToolExec::rotate_node},
        {"boolean_nodes", &ToolExec::boolean_nodes},
        {"reorder_node", &ToolExec::reorder_node},
        {"set_fill_color", &ToolExec::set_fill_color},
        {"set_corner_radius", &ToolExec::set_corner_radius},
        {"get_styles", &ToolExec::get_styles},
        {"set_opacity", &ToolExec::set_opacity},
        {"set_stroke", &ToolExec::set_stroke},
        {"set_fill_gradient", &ToolExec::set_fill_gradient},
        {"set_drop_shadow", &ToolExec::set_drop_shadow},
        {"set_inner_shadow", &ToolExec::set_inner_shadow},
        {"copy_style", &ToolExec::copy_style},
        {"set_padding", &ToolExec::set_padding},
        {"set_axis_align", &ToolExec::set_axis_align},
        {"set_layout_sizing", &ToolExec::set_layout_sizing},
        {"set_item_spacing", &ToolExec::set_item_spacing},
        {"set_layout_mode", &ToolExec::set_layout_mode},
        {"create_rectangle", &ToolExec::create_rectangle},
        {"create_frame", &ToolExec::create_frame},
        {"create_frame_from_node", &ToolExec::create_frame_from_node},
        {"create_text", &ToolExec::create_text},
        {"create_graphic", &ToolExec::create_graphic},
        {"create_ellipse", &ToolExec::create_ellipse},
        {"create_polygon", &ToolExec::create_polygon},
        {"create_star", &ToolExec::create_star},
        {"create_line", &ToolExec::create_line},
    };
    auto it = handlers.find(tool);
    if (it == handlers.end()) fail(ToolError::UnknownTool, "unknown tool '" + tool + "'");
    (this->*(it->second))();
  }
};

ToolResult CanvasDocument::apply(const ToolCall& call) {
  ToolResult result;
  if (!call.params.is_object()) {
    result = ToolResult::failure(ToolError::InvalidParam, "tool parameters must be an object");
    return result;
  }

  const auto before_nodes = nodes_;
  const auto before_counter = id_counter_;
  ToolExec exec{*this, call.params, result};
  try {
    exec.run(call.tool);
  } catch (const ToolFail& f) {
    nodes_ = before_nodes;  // rejected calls leave no trace
    id_counter_ = before_counter;
    return ToolResult::failure(f.error, f.message);
  } catch (const nlohmann::json::exception& e) {
    nodes_ = before_nodes;
    id_counter_ = before_counter;
    return ToolResult::failure(ToolError::InvalidParam, std::string("malformed parameters: ") + e.what());
  }

  result.ok = true;
  result.change = diff_nodes(before_nodes, nodes_);
  ++revision_;  // every accepted call advances history, even no-op rewrites
  return result;
}

}  // namespace coact::canvas
