#include "agent/llm_adapter.hpp"

#include <cstdlib>
#include <string>

#include <httplib.h>

#include "canvas/serialize.hpp"

namespace coact::agent {

namespace {

Json reasoner_input_to_json(const ReasonerInput& input) {
  Json touched = Json::array();
  for (const auto& [node, key] : input.user_touched)
    touched.push_back(Json{{"node", node}, {"key", key}});
  Json deleted = Json::array();
  for (const auto& id : input.user_deleted) deleted.push_back(id);
  return Json{{"canvas", canvas::snapshot_to_json(input.doc.snapshot())},
              {"plan", input.plan.to_json()},
              {"workspace", input.ctx.workspace},
              {"user_area", input.ctx.user_area},
              {"user_touched", std::move(touched)},
              {"user_deleted", std::move(deleted)},
              {"iteration", input.iteration},
              {"quality", quality_mode_name(input.quality)},
              {"batch_limit", input.batch_limit}};
}

bool parse_reasoner_output(const std::string& body, ReasonerOutput& out) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("calls") || !j.at("calls").is_array())
    return false;
  for (const auto& entry : j.at("calls")) {
    if (!entry.is_object() || !entry.contains("tool") || !entry.at("tool").is_string()) return false;
    canvas::ToolCall call;
    call.tool = entry.at("tool").get<std::string>();
    call.params = entry.value("params", Json::object());
    out.calls.push_back(std::move(call));
  }
  for (const auto& [index, key] : j.value("creates_item", Json::object()).items())
    out.creates_item[std::stoi(index)] = key.get<std::string>();
  out.note = j.value("note", "");
  return true;
}

}  // namespace

LlmAdapterConfig llm_config_from_env() {
  LlmAdapterConfig config;
  if (const char* endpoint = std::getenv("COACT_LLM_ENDPOINT")) config.endpoint = endpoint;
  if (const char* timeout = std::getenv("COACT_LLM_TIMEOUT_MS")) {
    char* end = nullptr;
    long value = std::strtol(timeout, &end, 10);
    if (end && *end == '\0' && value > 0) config.timeout_ms = static_cast<int>(value);
  }
  return config;
}

ReasonerFn make_llm_reasoner(LlmAdapterConfig config) {
  if (config.endpoint.empty()) return reference_reasoner;
  return [config = std::move(config)](const ReasonerInput& input) -> ReasonerOutput {
    httplib::Client client(config.endpoint);
    client.set_connection_timeout(0, config.timeout_ms * 1000);
    client.set_read_timeout(0, config.timeout_ms * 1000);
    client.set_write_timeout(0, config.timeout_ms * 1000);

    const std::string payload = reasoner_input_to_json(input).dump();
    auto res = client.Post(config.path, payload, "application/json");
    if (res && res->status == 200) {
      ReasonerOutput out;
      if (parse_reasoner_output(res->body, out)) return out;
    }
    // Transport failure or malformed answer: the built-in policy keeps the
    // session moving deterministically.
    return reference_reasoner(input);
  };
}

}  // namespace coact::agent
