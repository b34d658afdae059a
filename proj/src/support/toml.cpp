#include "support/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "support/error.hpp"

namespace coact {

namespace {

using nlohmann::json;

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"') in_str = !in_str;
    if (c == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

json parse_scalar(const std::string& raw, int line_no) {
  std::string v = strip(raw);
  if (v.empty()) throw Error(ErrorCode::ConfigInvalid, "empty value at line " + std::to_string(line_no));
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw Error(ErrorCode::ConfigInvalid, "unterminated string at line " + std::to_string(line_no));
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c == '\\' && i + 2 < v.size()) {
        char n = v[++i];
        switch (n) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: out += n;
        }
      } else {
        out += c;
      }
    }
    return json(out);
  }
  if (v == "true") return json(true);
  if (v == "false") return json(false);
  // integer or float
  bool is_float = v.find('.') != std::string::npos || v.find('e') != std::string::npos ||
                  v.find('E') != std::string::npos;
  try {
    size_t used = 0;
    if (is_float) {
      double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return json(d);
    }
    long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return json(i);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid,
                "bad value '" + v + "' at line " + std::to_string(line_no));
  }
}

json parse_value(const std::string& raw, int line_no) {
  std::string v = strip(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']')
      throw Error(ErrorCode::ConfigInvalid, "unterminated array at line " + std::to_string(line_no));
    json arr = json::array();
    std::string body = v.substr(1, v.size() - 2);
    std::string item;
    bool in_str = false;
    for (char c : body) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        if (!strip(item).empty()) arr.push_back(parse_scalar(item, line_no));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!strip(item).empty()) arr.push_back(parse_scalar(item, line_no));
    return arr;
  }
  return parse_scalar(v, line_no);
}

json* descend(json& root, const std::string& dotted, int line_no) {
  json* cur = &root;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    part = strip(part);
    if (part.empty())
      throw Error(ErrorCode::ConfigInvalid, "bad table name at line " + std::to_string(line_no));
    if (!cur->contains(part)) (*cur)[part] = json::object();
    cur = &(*cur)[part];
  }
  return cur;
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
  json root = json::object();
  json* table = &root;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = strip(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.size() >= 2 && s[1] == '[')
        throw Error(ErrorCode::ConfigInvalid,
                    "arrays of tables are not supported (line " + std::to_string(line_no) + ")");
      if (s.back() != ']')
        throw Error(ErrorCode::ConfigInvalid, "bad table header at line " + std::to_string(line_no));
      table = descend(root, s.substr(1, s.size() - 2), line_no);
      continue;
    }
    size_t eq = std::string::npos;
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') in_str = !in_str;
      if (s[i] == '=' && !in_str) { eq = i; break; }
    }
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigInvalid, "expected key = value at line " + std::to_string(line_no));
    std::string key = strip(s.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    if (key.empty())
      throw Error(ErrorCode::ConfigInvalid, "empty key at line " + std::to_string(line_no));
    (*table)[key] = parse_value(s.substr(eq + 1), line_no);
  }
  return root;
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") return parse_toml(text);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, "bad JSON in " + path + ": " + e.what());
  }
}

namespace {

std::string toml_scalar(const nlohmann::json& v) {
  if (v.is_string()) {
    std::string out = "\"";
    for (char c : v.get<std::string>()) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  }
  return v.dump();
}

}  // namespace

std::string to_toml(const nlohmann::json& doc) {
  std::ostringstream out;
  // top-level scalars first, then tables
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.value().is_object()) continue;
    if (it.value().is_array()) {
      out << it.key() << " = [";
      for (size_t i = 0; i < it.value().size(); ++i)
        out << (i ? ", " : "") << toml_scalar(it.value()[i]);
      out << "]\n";
    } else {
      out << it.key() << " = " << toml_scalar(it.value()) << "\n";
    }
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_object()) continue;
    out << "\n[" << it.key() << "]\n";
    for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
      if (kv.value().is_array()) {
        out << kv.key() << " = [";
        for (size_t i = 0; i < kv.value().size(); ++i)
          out << (i ? ", " : "") << toml_scalar(kv.value()[i]);
        out << "]\n";
      } else {
        out << kv.key() << " = " << toml_scalar(kv.value()) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace coact
