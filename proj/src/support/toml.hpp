#pragma once

#include <string>

#include "json.hpp"

namespace coact {

// Minimal TOML reader covering the subset used by config files: [a.b]
// tables, key = value pairs with strings, integers, floats, booleans and
// flat arrays, plus # comments. Throws Error(ConfigInvalid) on anything
// else. Returns a json object tree.
nlohmann::json parse_toml(const std::string& text);

// Dispatches on extension: .toml via parse_toml, otherwise JSON.
nlohmann::json load_config_file(const std::string& path);

// Serializes a flat two-level json object ({table: {key: scalar-or-array}})
// back to TOML. Used when writing fitted policies.
std::string to_toml(const nlohmann::json& doc);

}  // namespace coact
