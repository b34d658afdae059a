#include "coact/coact.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "analysis/annotate.hpp"
#include "analysis/calibrate.hpp"
#include "analysis/compare.hpp"
#include "analysis/reference.hpp"
#include "analysis/render.hpp"
#include "analysis/stats.hpp"
#include "canvas/document.hpp"
#include "canvas/serialize.hpp"
#include "session/config.hpp"
#include "session/log.hpp"
#include "session/orchestrator.hpp"
#include "support/error.hpp"
#include "support/gzip.hpp"
#include "support/toml.hpp"

using coact::Error;
using coact::ErrorCode;
using Json = nlohmann::json;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

// How engine error codes surface through the C boundary. io_status lets the
// caller distinguish "input file missing" (config vs log) per entry point.
coact_status status_for(const Error& e, coact_status io_status) {
  switch (e.code()) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::SearchSpaceEmpty:
      return COACT_ERR_CONFIG;
    case ErrorCode::EmptyCorpus:
      return COACT_ERR_NO_INPUT;
    case ErrorCode::Io:
      return io_status;
    default:
      return COACT_ERR_RUNTIME;
  }
}

template <typename Fn>
coact_status guarded(coact_status io_status, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    set_error(e.what());
    return status_for(e, io_status);
  } catch (const std::exception& e) {
    set_error(e.what());
    return COACT_ERR_RUNTIME;
  }
}

Json parse_json_arg(const char* text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ConfigInvalid, std::string(what) + " is not valid JSON");
  }
  return j;
}

coact::analysis::ReferenceStats resolve_reference(const char* reference_path) {
  if (!reference_path || !*reference_path || std::strcmp(reference_path, "builtin") == 0) {
    return coact::analysis::ReferenceStats::builtin();
  }
  try {
    return coact::analysis::load_reference(reference_path);
  } catch (const Error& e) {
    // Reference data is configuration: surface every load problem as such.
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
}

}  // namespace

struct coact_doc {
  coact::canvas::CanvasDocument doc;
  explicit coact_doc(const std::string& lineage) : doc(lineage) {}
};

extern "C" {

const char* coact_version(void) { return "1.0.0"; }

const char* coact_last_error(void) { return g_last_error.c_str(); }

void coact_string_free(char* s) { std::free(s); }

/* ---- canvas documents --------------------------------------------------- */

coact_status coact_doc_new(const char* lineage, coact_doc** out) {
  if (!out) {
    set_error("out pointer is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_RUNTIME, [&] {
    *out = new coact_doc(lineage && *lineage ? lineage : "canvas");
    return COACT_OK;
  });
}

void coact_doc_free(coact_doc* doc) { delete doc; }

coact_status coact_doc_apply(coact_doc* doc, const char* call_json, char** result_json) {
  if (!doc || !call_json) {
    set_error("doc or call is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_RUNTIME, [&] {
    auto call = coact::canvas::ToolCall::from_json(parse_json_arg(call_json, "tool call"));
    auto result = doc->doc.apply(call);
    Json out{{"ok", result.ok}, {"created", result.created_ids}};
    if (!result.ok && result.error) {
      out["error"] = coact::canvas::tool_error_name(*result.error);
      out["message"] = result.error_message;
    }
    if (!result.data.is_null()) out["data"] = result.data;
    emit(result_json, out.dump());
    return COACT_OK;
  });
}

coact_status coact_doc_snapshot(const coact_doc* doc, char** snapshot_json) {
  if (!doc || !snapshot_json) {
    set_error("doc or out pointer is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_RUNTIME, [&] {
    emit(snapshot_json, coact::canvas::canonical_canvas_json(doc->doc.snapshot()));
    return COACT_OK;
  });
}

coact_status coact_doc_validate(const coact_doc* doc) {
  if (!doc) {
    set_error("doc is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_RUNTIME, [&] {
    auto violations = doc->doc.validate();
    if (!violations.empty()) {
      std::string why;
      for (const auto& v : violations) {
        if (!why.empty()) why += "; ";
        why += v.detail;
      }
      set_error(why);
      return COACT_ERR_VERIFY;
    }
    return COACT_OK;
  });
}

/* ---- simulation ---------------------------------------------------------- */

coact_status coact_simulate(const char* config_path, const char* overrides_json,
                            const char* out_dir, char** summary_json) {
  if (!config_path || !out_dir) {
    set_error("config path or output directory is null");
    return COACT_ERR_INVALID_ARG;
  }
  // Configuration loading failures (including a missing file) are config
  // errors; everything after that is runtime.
  coact::session::SessionConfig config;
  coact_status rc = guarded(COACT_ERR_CONFIG, [&] {
    config = coact::session::SessionConfig::load(config_path);
    if (overrides_json && *overrides_json) {
      Json overrides = parse_json_arg(overrides_json, "overrides");
      if (overrides.contains("seed")) config.seed = overrides.at("seed").get<std::uint64_t>();
      if (overrides.contains("sessions")) config.sessions = overrides.at("sessions").get<int>();
    }
    config.validate();
    return COACT_OK;
  });
  if (rc != COACT_OK) return rc;

  return guarded(COACT_ERR_RUNTIME, [&] {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(out_dir), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + std::string(out_dir) + ": " + ec.message());

    Json files = Json::array();
    int total_turns = 0;
    for (int i = 0; i < config.sessions; ++i) {
      auto outcome = coact::session::run_session(config, i);
      char name[32];
      std::snprintf(name, sizeof(name), "session-%03d.jsonl", i);
      const std::string path = (fs::path(out_dir) / name).string();
      coact::write_file(path, outcome.log.serialize());
      total_turns += outcome.turns;
      files.push_back(Json{{"file", path},
                           {"turns", outcome.turns},
                           {"seed", outcome.log.header.value("seed", 0ull)}});
    }
    Json summary{{"sessions", config.sessions},
                 {"turns", total_turns},
                 {"seed", config.seed},
                 {"out_dir", out_dir},
                 {"files", files}};
    emit(summary_json, summary.dump());
    return COACT_OK;
  });
}

/* ---- analysis ------------------------------------------------------------ */

coact_status coact_analyze(const char* paths_json, const char* reference_path,
                           double tolerance_pp, char** report_json) {
  if (!paths_json) {
    set_error("paths argument is null");
    return COACT_ERR_INVALID_ARG;
  }
  if (tolerance_pp < 0) {
    set_error("tolerance must be >= 0");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_NO_INPUT, [&] {
    Json paths = parse_json_arg(paths_json, "log path list");
    if (!paths.is_array()) throw Error(ErrorCode::ConfigInvalid, "log path list must be an array");
    if (paths.empty()) throw Error(ErrorCode::EmptyCorpus, "no input logs");

    std::vector<coact::analysis::TurnAnnotation> all;
    coact::analysis::Agreement agreement;
    for (const auto& p : paths) {
      auto log = coact::session::SessionLog::load(p.get<std::string>());
      auto turns = coact::analysis::annotate(log);
      all.insert(all.end(), turns.begin(), turns.end());
      auto agg = coact::analysis::coder_agreement(log);
      agreement.turns += agg.turns;
      agreement.disagreements += agg.disagreements;
      for (auto& c : agg.causes) agreement.causes.push_back(std::move(c));
    }
    auto dist = coact::analysis::distribution(all);

    Json report{{"logs", paths.size()},
                {"turns", dist.total},
                {"distribution", dist.to_json()},
                {"agreement", agreement.to_json()}};
    bool tolerance_ok = true;
    if (reference_path && *reference_path) {
      auto ref = resolve_reference(reference_path);
      auto cmp = coact::analysis::compare(dist, ref, tolerance_pp);
      tolerance_ok = cmp.all_pass;
      report["reference"] = ref.to_json();
      report["compare"] = cmp.to_json();
    }
    emit(report_json, report.dump());
    if (!tolerance_ok) {
      set_error("distribution outside tolerance");
      return COACT_ERR_VERIFY;
    }
    return COACT_OK;
  });
}

coact_status coact_render(const char* report_json, const char* mode, char** out) {
  if (!report_json || !mode || !out) {
    set_error("report, mode, or out pointer is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_RUNTIME, [&] {
    Json report = parse_json_arg(report_json, "report");
    if (!report.contains("distribution")) {
      throw Error(ErrorCode::ConfigInvalid, "report has no distribution section");
    }
    auto dist = coact::analysis::Distribution::from_json(report.at("distribution"));
    std::optional<coact::analysis::ReferenceStats> ref;
    if (report.contains("reference")) {
      ref = coact::analysis::ReferenceStats::from_json(report.at("reference"));
    }
    std::optional<coact::analysis::CompareReport> cmp;
    if (report.contains("compare")) {
      cmp = coact::analysis::CompareReport::from_json(report.at("compare"));
    }
    std::string text;
    if (std::strcmp(mode, "table") == 0) {
      text = coact::analysis::render_table(dist, ref ? &*ref : nullptr, cmp ? &*cmp : nullptr);
    } else if (std::strcmp(mode, "svg") == 0) {
      text = coact::analysis::render_svg(dist, ref ? &*ref : nullptr);
    } else {
      set_error("unknown render mode");
      return COACT_ERR_INVALID_ARG;
    }
    emit(out, text);
    return COACT_OK;
  });
}

/* ---- calibration --------------------------------------------------------- */

coact_status coact_calibrate(const char* config_path, const char* reference_path,
                             const char* overrides_json, int budget, int sessions_per_eval,
                             char** result_json) {
  if (!config_path) {
    set_error("config path is null");
    return COACT_ERR_INVALID_ARG;
  }
  coact::session::SessionConfig config;
  coact::analysis::ReferenceStats ref;
  coact_status rc = guarded(COACT_ERR_CONFIG, [&] {
    config = coact::session::SessionConfig::load(config_path);
    if (overrides_json && *overrides_json) {
      Json overrides = parse_json_arg(overrides_json, "overrides");
      if (overrides.contains("seed")) config.seed = overrides.at("seed").get<std::uint64_t>();
    }
    config.validate();
    ref = resolve_reference(reference_path);
    return COACT_OK;
  });
  if (rc != COACT_OK) return rc;

  return guarded(COACT_ERR_RUNTIME, [&] {
    const int sessions = sessions_per_eval > 0 ? sessions_per_eval : config.sessions;
    auto eval = [&](const coact::sim::SimPolicy& policy) {
      coact::session::SessionConfig c = config;
      c.policy = policy;
      c.sessions = sessions;
      std::vector<coact::analysis::TurnAnnotation> all;
      for (int i = 0; i < sessions; ++i) {
        auto outcome = coact::session::run_session(c, i);
        auto turns = coact::analysis::annotate(outcome.log);
        all.insert(all.end(), turns.begin(), turns.end());
      }
      return coact::analysis::distribution(all);
    };
    auto result = coact::analysis::calibrate(ref, config.policy, budget, config.seed, eval);
    Json out = result.to_json();
    out["policy_toml"] = coact::to_toml(result.policy.to_config());
    emit(result_json, out.dump());
    return COACT_OK;
  });
}

/* ---- replay -------------------------------------------------------------- */

coact_status coact_replay(const char* log_path, int verify, char** result_json) {
  if (!log_path) {
    set_error("log path is null");
    return COACT_ERR_INVALID_ARG;
  }
  return guarded(COACT_ERR_NO_INPUT, [&] {
    auto log = coact::session::SessionLog::load(log_path);
    if (verify) {
      std::string why;
      const bool match = coact::session::verify_replay(log, &why);
      Json out{{"match", match}};
      if (!match) out["reason"] = why;
      emit(result_json, out.dump());
      if (!match) {
        set_error(why.empty() ? "replay diverges from logged canvas" : why);
        return COACT_ERR_VERIFY;
      }
      return COACT_OK;
    }
    auto snapshot = coact::session::replay(log);
    Json out{{"snapshot", coact::canvas::snapshot_to_json(snapshot)}};
    emit(result_json, out.dump());
    return COACT_OK;
  });
}

}  // extern "C"
