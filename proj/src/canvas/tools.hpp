#pragma once

#include <string>
#include <vector>

#include "canvas/document.hpp"

namespace coact::canvas {

enum class ToolGroup { Text, Operation, Style, Layout, Create };
const char* tool_group_name(ToolGroup group);

struct ToolSpec {
  std::string name;
  ToolGroup group;
};

// Full tool surface: 4 text, 11 operation, 9 style, 5 layout, 9 create.
const std::vector<ToolSpec>& tool_catalogue();
bool is_known_tool(const std::string& name);
bool is_create_tool(const std::string& name);

}  // namespace coact::canvas
