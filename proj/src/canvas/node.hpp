#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace coact::canvas {

using Json = nlohmann::json;
using NodeId = std::string;

enum class NodeKind {
  Frame,
  Group,
  Rectangle,
  Ellipse,
  Polygon,
  Star,
  Line,
  Text,
  Graphic,
  BooleanComposite,
};

const char* kind_name(NodeKind kind);
std::optional<NodeKind> kind_from_name(const std::string& name);

// Property keys. The model is a typed key-value map; these constants are the
// vocabulary the tools read and write. "name" is stored as a property so
// renames flow through the same diff machinery as styling changes.
namespace prop {
inline constexpr const char* kName = "name";
inline constexpr const char* kX = "x";
inline constexpr const char* kY = "y";
inline constexpr const char* kWidth = "width";
inline constexpr const char* kHeight = "height";
inline constexpr const char* kFill = "fill";
inline constexpr const char* kCornerRadius = "corner_radius";
inline constexpr const char* kOpacity = "opacity";
inline constexpr const char* kStroke = "stroke";
inline constexpr const char* kDropShadow = "drop_shadow";
inline constexpr const char* kInnerShadow = "inner_shadow";
inline constexpr const char* kRotation = "rotation";
inline constexpr const char* kText = "text";
inline constexpr const char* kFontSize = "font_size";
inline constexpr const char* kFontFamily = "font_family";
inline constexpr const char* kFontStyle = "font_style";
inline constexpr const char* kLineHeight = "line_height";
inline constexpr const char* kLetterSpacing = "letter_spacing";
inline constexpr const char* kTextAlign = "text_align";
inline constexpr const char* kTextDecoration = "text_decoration";
inline constexpr const char* kTextCase = "text_case";
inline constexpr const char* kLayoutMode = "layout_mode";
inline constexpr const char* kLayoutWrap = "layout_wrap";
inline constexpr const char* kPadding = "padding";
inline constexpr const char* kItemSpacing = "item_spacing";
inline constexpr const char* kAxisAlign = "axis_align";
inline constexpr const char* kSizing = "sizing";
inline constexpr const char* kSvg = "svg";
inline constexpr const char* kBooleanOp = "boolean_op";
inline constexpr const char* kSides = "sides";
inline constexpr const char* kPoints = "points";
inline constexpr const char* kInnerRadiusRatio = "inner_radius_ratio";
inline constexpr const char* kX1 = "x1";
inline constexpr const char* kY1 = "y1";
inline constexpr const char* kX2 = "x2";
inline constexpr const char* kY2 = "y2";
}  // namespace prop

struct CanvasNode {
  NodeId id;
  NodeKind kind = NodeKind::Frame;
  std::optional<NodeId> parent;  // absent only for the page root
  int index = 0;                 // position among siblings, 0-based
  std::map<std::string, Json> props;

  std::string name() const {
    auto it = props.find(prop::kName);
    return it != props.end() && it->second.is_string() ? it->second.get<std::string>() : "";
  }
  double num(const char* key, double fallback = 0.0) const {
    auto it = props.find(key);
    return it != props.end() && it->second.is_number() ? it->second.get<double>() : fallback;
  }
  std::string str(const char* key, const std::string& fallback = "") const {
    auto it = props.find(key);
    return it != props.end() && it->second.is_string() ? it->second.get<std::string>() : fallback;
  }
  bool is_auto_layout() const {
    std::string m = str(prop::kLayoutMode, "none");
    return m == "horizontal" || m == "vertical";
  }
  bool is_container() const { return kind == NodeKind::Frame || kind == NodeKind::Group; }

  bool operator==(const CanvasNode&) const = default;
};

Json node_to_json(const CanvasNode& node);
CanvasNode node_from_json(const Json& j);

}  // namespace coact::canvas
