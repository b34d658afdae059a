#include "agent/request.hpp"

#include <regex>

#include "canvas/node.hpp"

namespace coact::agent {
namespace {

using canvas::prop::kAxisAlign;
using canvas::prop::kCornerRadius;
using canvas::prop::kFill;
using canvas::prop::kFontSize;
using canvas::prop::kHeight;
using canvas::prop::kItemSpacing;
using canvas::prop::kLayoutMode;
using canvas::prop::kPadding;
using canvas::prop::kText;
using canvas::prop::kWidth;

Json solid(double r, double g, double b) {
  return Json{{"type", "solid"}, {"rgba", Json::array({r, g, b, 1.0})}};
}

Json solid(const std::array<double, 3>& rgb) { return solid(rgb[0], rgb[1], rgb[2]); }

Json pad(double all) {
  return Json{{"top", all}, {"right", all}, {"bottom", all}, {"left", all}};
}

PropPredicate eq(const char* key, Json value) {
  PropPredicate p;
  p.key = key;
  p.op = PredicateOp::Eq;
  p.value = std::move(value);
  return p;
}

GoalItem item(std::string key, std::string kind, std::string parent, std::string name,
              std::vector<PropPredicate> preds, std::string group = "") {
  GoalItem it;
  it.key = std::move(key);
  it.kind = std::move(kind);
  it.parent = std::move(parent);
  it.name = std::move(name);
  it.group = std::move(group);
  it.predicates = std::move(preds);
  return it;
}

std::string normalize_section_type(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "two-column" || s == "two column") return "two_column";
  if (s == "three-column" || s == "three column") return "three_column";
  if (s == "card grid" || s == "card-grid") return "card_grid";
  return s;
}

}  // namespace

const std::map<std::string, std::array<double, 3>>& color_palette() {
  static const std::map<std::string, std::array<double, 3>> palette = {
      {"red", {0.86, 0.2, 0.18}},    {"blue", {0.23, 0.51, 0.96}},  {"green", {0.13, 0.7, 0.42}},
      {"purple", {0.55, 0.36, 0.96}}, {"orange", {0.96, 0.62, 0.17}}, {"teal", {0.1, 0.66, 0.64}},
      {"slate", {0.28, 0.33, 0.41}},  {"white", {1.0, 1.0, 1.0}},    {"black", {0.0, 0.0, 0.0}},
      {"yellow", {0.98, 0.8, 0.18}},
  };
  return palette;
}

UserRequest parse_request(const std::string& text) {
  UserRequest req;
  req.raw = text;

  static const std::regex create_re(
      R"(^\s*(?:create|add)\s+a\s+(hero|navbar|footer|two-column|three-column|card grid)\s+section(?:\s+named\s+'([^']+)')?(?:\s+with\s+(\d+)\s+cards)?\s*\.?\s*$)",
      std::regex::icase);
  static const std::regex recolor_re(R"(^\s*recolor\s+(#\d+|'[^']+')\s+to\s+([a-z]+)\s*\.?\s*$)",
                                     std::regex::icase);
  static const std::regex enlarge_re(R"(^\s*make\s+this\s+larger\s*\.?\s*$)", std::regex::icase);
  static const std::regex round_re(
      R"(^\s*round\s+the\s+corners\s+of\s+(#\d+|'[^']+')\s+to\s+(\d+(?:\.\d+)?)px\s*\.?\s*$)",
      std::regex::icase);
  static const std::regex theme_re(R"(^\s*apply\s+the\s+dark\s+theme\s+to\s+(#\d+|'[^']+')\s*\.?\s*$)",
                                   std::regex::icase);
  static const std::regex arrange_re(
      R"(^\s*arrange\s+(#\d+|'[^']+')\s+(horizontally|vertically)\s*\.?\s*$)", std::regex::icase);
  static const std::regex spacing_re(
      R"(^\s*space\s+items\s+in\s+(#\d+|'[^']+')\s+by\s+(\d+(?:\.\d+)?)px\s*\.?\s*$)", std::regex::icase);

  std::smatch m;
  if (std::regex_match(text, m, create_re)) {
    req.action = true;
    req.form = "create_section";
    req.args["section_type"] = normalize_section_type(m[1].str());
    if (m[2].matched) req.args["name"] = m[2].str();
    if (m[3].matched) req.args["cards"] = std::stoi(m[3].str());
    return req;
  }
  if (std::regex_match(text, m, recolor_re)) {
    std::string color = m[2].str();
    for (auto& c : color) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (color_palette().count(color)) {
      req.action = true;
      req.form = "recolor";
      req.args["target_ref"] = m[1].str();
      req.args["color"] = color;
    }
    return req;
  }
  if (std::regex_match(text, m, enlarge_re)) {
    req.action = true;
    req.form = "enlarge";
    return req;
  }
  if (std::regex_match(text, m, round_re)) {
    req.action = true;
    req.form = "round_corners";
    req.args["target_ref"] = m[1].str();
    req.args["px"] = std::stod(m[2].str());
    return req;
  }
  if (std::regex_match(text, m, theme_re)) {
    req.action = true;
    req.form = "dark_theme";
    req.args["target_ref"] = m[1].str();
    return req;
  }
  if (std::regex_match(text, m, arrange_re)) {
    req.action = true;
    req.form = "arrange";
    req.args["target_ref"] = m[1].str();
    req.args["direction"] = m[2].str() == "horizontally" ? "horizontal" : "vertical";
    return req;
  }
  if (std::regex_match(text, m, spacing_re)) {
    req.action = true;
    req.form = "spacing";
    req.args["target_ref"] = m[1].str();
    req.args["px"] = std::stod(m[2].str());
    return req;
  }
  return req;  // chatter
}

GoalSpec section_goal(const std::string& section_type, const std::string& section_name, int cards) {
  GoalSpec goal;
  goal.form = "create_section";
  const auto& pal = color_palette();

  if (section_type == "hero") {
    goal.summary = "build hero section '" + section_name + "'";
    goal.items = {
        item("section", "frame", "@workspace", section_name,
             {eq(kLayoutMode, "vertical"), eq(kPadding, pad(48.0)), eq(kItemSpacing, 16.0),
              eq(kFill, solid(0.98, 0.98, 0.96)), eq(kWidth, 960.0), eq(kHeight, 320.0)}),
        item("title", "text", "@item:section", "hero title",
             {eq(kText, "Welcome to the Studio"), eq(kFontSize, 48.0)}),
        item("subtitle", "text", "@item:section", "hero subtitle",
             {eq(kText, "We build calm, deliberate interfaces."), eq(kFontSize, 18.0)}),
        item("cta", "rectangle", "@item:section", "hero cta",
             {eq(kWidth, 180.0), eq(kHeight, 52.0), eq(kCornerRadius, 8.0), eq(kFill, solid(pal.at("blue")))}),
    };
  } else if (section_type == "navbar") {
    goal.summary = "build navbar section '" + section_name + "'";
    goal.items = {
        item("section", "frame", "@workspace", section_name,
             {eq(kLayoutMode, "horizontal"), eq(kPadding, pad(24.0)), eq(kItemSpacing, 32.0),
              eq(kFill, solid(1.0, 1.0, 1.0)), eq(kWidth, 960.0), eq(kHeight, 72.0)}),
        item("brand", "text", "@item:section", "brand", {eq(kText, "Studio"), eq(kFontSize, 20.0)}),
        item("link_home", "text", "@item:section", "nav link home",
             {eq(kText, "Home"), eq(kFontSize, 14.0)}, "links"),
        item("link_work", "text", "@item:section", "nav link work",
             {eq(kText, "Work"), eq(kFontSize, 14.0)}, "links"),
        item("link_contact", "text", "@item:section", "nav link contact",
             {eq(kText, "Contact"), eq(kFontSize, 14.0)}, "links"),
    };
  } else if (section_type == "footer") {
    goal.summary = "build footer section '" + section_name + "'";
    goal.items = {
        item("section", "frame", "@workspace", section_name,
             {eq(kLayoutMode, "horizontal"), eq(kPadding, pad(32.0)), eq(kItemSpacing, 24.0),
              eq(kFill, solid(pal.at("slate"))), eq(kWidth, 960.0), eq(kHeight, 96.0)}),
        item("note", "text", "@item:section", "footer note",
             {eq(kText, "(c) 2026 Studio"), eq(kFontSize, 12.0), eq(kFill, solid(1.0, 1.0, 1.0))}),
        item("links", "text", "@item:section", "footer links",
             {eq(kText, "Privacy / Terms"), eq(kFontSize, 12.0), eq(kFill, solid(1.0, 1.0, 1.0))}),
    };
  } else if (section_type == "two_column" || section_type == "three_column") {
    int n = section_type == "two_column" ? 2 : 3;
    double col_width = n == 2 ? 440.0 : 296.0;
    goal.summary = "build " + std::string(n == 2 ? "two" : "three") + "-column section '" + section_name + "'";
    goal.items.push_back(item("section", "frame", "@workspace", section_name,
                              {eq(kLayoutMode, "horizontal"), eq(kPadding, pad(32.0)), eq(kItemSpacing, 24.0),
                               eq(kWidth, 960.0), eq(kHeight, 280.0)}));
    for (int i = 1; i <= n; ++i) {
      std::string ck = "col_" + std::to_string(i);
      goal.items.push_back(item(ck, "frame", "@item:section", "column " + std::to_string(i),
                                {eq(kLayoutMode, "vertical"), eq(kWidth, col_width), eq(kHeight, 216.0),
                                 eq(kPadding, pad(16.0)), eq(kItemSpacing, 12.0),
                                 eq(kFill, solid(0.94, 0.94, 0.94))},
                                "columns"));
      goal.items.push_back(item(ck + "_heading", "text", "@item:" + ck,
                                "column " + std::to_string(i) + " heading",
                                {eq(kText, "Column " + std::to_string(i)), eq(kFontSize, 16.0)}));
    }
  } else if (section_type == "card_grid") {
    int n = cards < 1 ? 4 : cards;
    goal.summary = "build card grid section '" + section_name + "' with " + std::to_string(n) + " cards";
    goal.items.push_back(item("section", "frame", "@workspace", section_name,
                              {eq(kLayoutMode, "horizontal"), eq(kPadding, pad(32.0)), eq(kItemSpacing, 16.0),
                               eq(kWidth, 960.0), eq(kHeight, 304.0)}));
    for (int i = 1; i <= n; ++i) {
      std::string ck = "card_" + std::to_string(i);
      goal.items.push_back(item(ck, "frame", "@item:section", "card " + std::to_string(i),
                                {eq(kLayoutMode, "vertical"), eq(kWidth, 200.0), eq(kHeight, 240.0),
                                 eq(kPadding, pad(12.0)), eq(kItemSpacing, 12.0),
                                 eq(kFill, solid(1.0, 1.0, 1.0)), eq(kCornerRadius, 10.0)},
                                "cards"));
      goal.items.push_back(item(ck + "_image", "rectangle", "@item:" + ck,
                                "card " + std::to_string(i) + " image",
                                {eq(kWidth, 176.0), eq(kHeight, 120.0), eq(kCornerRadius, 6.0),
                                 eq(kFill, solid(0.88, 0.9, 0.93))}));
      goal.items.push_back(item(ck + "_title", "text", "@item:" + ck,
                                "card " + std::to_string(i) + " title",
                                {eq(kText, "Card " + std::to_string(i)), eq(kFontSize, 14.0)}));
    }
  }
  return goal;
}

std::string format_create_section(const std::string& section_type, const std::string& name, int cards) {
  std::string spoken = section_type;
  if (spoken == "two_column") spoken = "two-column";
  if (spoken == "three_column") spoken = "three-column";
  if (spoken == "card_grid") spoken = "card grid";
  std::string text = "create a " + spoken + " section named '" + name + "'";
  if (section_type == "card_grid") text += " with " + std::to_string(cards) + " cards";
  return text;
}

std::string format_recolor(const std::string& target_ref, const std::string& color) {
  return "recolor " + target_ref + " to " + color;
}

std::string format_enlarge() { return "make this larger"; }

std::string format_round_corners(const std::string& target_ref, double px) {
  int whole = static_cast<int>(px);
  return "round the corners of " + target_ref + " to " + std::to_string(whole) + "px";
}

std::string format_dark_theme(const std::string& target_ref) {
  return "apply the dark theme to " + target_ref;
}

std::string format_arrange(const std::string& target_ref, const std::string& direction) {
  return "arrange " + target_ref + " " + (direction == "horizontal" ? "horizontally" : "vertically");
}

std::string format_spacing(const std::string& target_ref, double px) {
  int whole = static_cast<int>(px);
  return "space items in " + target_ref + " by " + std::to_string(whole) + "px";
}

std::string ref_for_id(const NodeId& id) { return "#" + id; }

std::string ref_for_name(const std::string& name) { return "'" + name + "'"; }

}  // namespace coact::agent
