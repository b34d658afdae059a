#include "session/script.hpp"

#include <algorithm>
#include <array>

#include "agent/request.hpp"
#include "support/error.hpp"
#include "support/gzip.hpp"
#include "support/rng.hpp"

namespace coact::session {
namespace {

constexpr std::array<const char*, 6> kSectionTypes = {"hero",       "navbar",       "footer",
                                                      "two_column", "three_column", "card_grid"};

constexpr std::array<const char*, 5> kEditColors = {"blue", "teal", "purple", "orange", "green"};

}  // namespace

Json ScriptRequest::to_json() const {
  Json j{{"text", text}};
  if (!intent.empty()) j["intent"] = intent;
  if (!sloppy_iterations.empty()) j["sloppy_iterations"] = sloppy_iterations;
  return j;
}

ScriptRequest ScriptRequest::from_json(const Json& j) {
  ScriptRequest req;
  req.text = j.at("text").get<std::string>();
  req.intent = j.value("intent", std::string());
  if (j.contains("sloppy_iterations"))
    req.sloppy_iterations = j.at("sloppy_iterations").get<std::vector<int>>();
  return req;
}

void SessionScript::validate() const {
  if (requests.empty()) throw Error(ErrorCode::ConfigInvalid, "script has no requests");
  for (const auto& req : requests) {
    if (req.text.empty()) throw Error(ErrorCode::ConfigInvalid, "script request with empty text");
    for (int i : req.sloppy_iterations)
      if (i < 1 || i > 10)
        throw Error(ErrorCode::ConfigInvalid, "sloppy iteration index out of range: " + std::to_string(i));
  }
}

Json SessionScript::to_json() const {
  Json reqs = Json::array();
  for (const auto& r : requests) reqs.push_back(r.to_json());
  return Json{{"format", "coact-script/1"}, {"requests", std::move(reqs)}};
}

SessionScript SessionScript::from_json(const Json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "coact-script/1")
    throw Error(ErrorCode::ConfigInvalid, "not a coact-script/1 document");
  SessionScript script;
  for (const auto& r : j.at("requests")) script.requests.push_back(ScriptRequest::from_json(r));
  script.validate();
  return script;
}

SessionScript SessionScript::load(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file_maybe_gzip(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("script is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

SessionScript generate_script(std::uint64_t seed, const ScriptOptions& options) {
  if (options.min_requests < 1 || options.max_requests < options.min_requests)
    throw Error(ErrorCode::ConfigInvalid, "request count bounds are inconsistent");
  Rng rng(seed);
  SessionScript script;
  int count = static_cast<int>(
      options.min_requests + rng.below(static_cast<std::uint64_t>(options.max_requests - options.min_requests + 1)));

  std::vector<std::string> built_names;  // sections requested so far, editable later
  int section_serial = 0;

  auto next_section = [&](std::string& type, std::string& name, int& cards) {
    type = kSectionTypes[section_serial % kSectionTypes.size()];
    ++section_serial;
    name = std::string(type) + " " + std::to_string(section_serial);
    std::replace(name.begin(), name.end(), '_', ' ');
    cards = static_cast<int>(3 + rng.below(4));
  };

  for (int i = 0; i < count; ++i) {
    ScriptRequest req;
    bool make_section = built_names.empty() || rng.chance(0.6);
    if (make_section) {
      std::string type, name;
      int cards = 4;
      next_section(type, name, cards);
      req.text = agent::format_create_section(type, name, cards);
      built_names.push_back(name);
      if (rng.chance(options.misalignment_rate)) {
        // The typed request isn't what they meant: intend a different section.
        std::string itype, iname;
        int icards = 4;
        next_section(itype, iname, icards);
        req.intent = agent::format_create_section(itype, iname, icards);
      }
    } else {
      const std::string& target = built_names[rng.below(built_names.size())];
      std::string ref = agent::ref_for_name(target);
      switch (rng.below(5)) {
        case 0:
          req.text = agent::format_recolor(ref, kEditColors[rng.below(kEditColors.size())]);
          break;
        case 1:
          req.text = agent::format_round_corners(ref, 8.0 + 4.0 * static_cast<double>(rng.below(3)));
          break;
        case 2:
          req.text = agent::format_spacing(ref, 16.0 + 8.0 * static_cast<double>(rng.below(3)));
          break;
        case 3:
          req.text = agent::format_arrange(ref, rng.below(2) == 0 ? "horizontal" : "vertical");
          break;
        default:
          req.text = agent::format_dark_theme(ref);
          break;
      }
    }
    if (rng.chance(options.quality_rate))
      req.sloppy_iterations = {static_cast<int>(1 + rng.below(3))};
    script.requests.push_back(std::move(req));
  }
  return script;
}

}  // namespace coact::session
