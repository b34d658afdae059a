#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "agent/goal.hpp"

namespace coact::agent {

// A user utterance after shallow understanding: either one of the structured
// request forms the agent knows how to act on, or chatter.
struct UserRequest {
  std::string raw;
  bool action = false;
  std::string form;  // create_section | recolor | enlarge | round_corners |
                     // dark_theme | arrange | spacing (when action)
  Json args = Json::object();
};

UserRequest parse_request(const std::string& text);

// Named colors the request language accepts, as linear rgb triples.
const std::map<std::string, std::array<double, 3>>& color_palette();

// Deterministic build plan for one named section. Parent references inside
// use "@workspace" (the agent's working frame) and "@item:<key>".
GoalSpec section_goal(const std::string& section_type, const std::string& section_name, int cards);

// Formatting helpers that emit strings parse_request understands; the
// simulated user speaks through these so both sides share one vocabulary.
std::string format_create_section(const std::string& section_type, const std::string& name, int cards = 4);
std::string format_recolor(const std::string& target_ref, const std::string& color);
std::string format_enlarge();
std::string format_round_corners(const std::string& target_ref, double px);
std::string format_dark_theme(const std::string& target_ref);
std::string format_arrange(const std::string& target_ref, const std::string& direction);
std::string format_spacing(const std::string& target_ref, double px);

// Node references inside request text: "#<id>" or a quoted name.
std::string ref_for_id(const NodeId& id);
std::string ref_for_name(const std::string& name);

}  // namespace coact::agent
