#pragma once

#include <string>

#include "agent/reasoner.hpp"

namespace coact::agent {

// Configuration for delegating the per-iteration reasoning step to an
// external HTTP service. The service receives the plan, canvas snapshot, and
// constraints as JSON and answers with tool calls in the same schema the
// built-in policy emits. Any transport or schema problem falls back to the
// built-in policy so a session never stalls on a flaky endpoint.
struct LlmAdapterConfig {
  std::string endpoint;            // e.g. "http://127.0.0.1:8090"
  std::string path = "/reason";
  int timeout_ms = 15000;          // overridden by COACT_LLM_TIMEOUT_MS
};

// Build a reasoner backed by the configured endpoint. Returns the built-in
// reference policy unchanged when `endpoint` is empty.
ReasonerFn make_llm_reasoner(LlmAdapterConfig config);

// Reads COACT_LLM_ENDPOINT / COACT_LLM_TIMEOUT_MS from the environment.
LlmAdapterConfig llm_config_from_env();

}  // namespace coact::agent
