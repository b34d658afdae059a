// coact command-line front end. Talks to the engine exclusively through the
// public C interface; everything here is argument plumbing and I/O.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coact/coact.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitNoInput = 4;
constexpr int kExitVerify = 5;

int exit_code(coact_status status) {
  switch (status) {
    case COACT_OK: return kExitOk;
    case COACT_ERR_CONFIG: return kExitConfig;
    case COACT_ERR_NO_INPUT: return kExitNoInput;
    case COACT_ERR_VERIFY: return kExitVerify;
    case COACT_ERR_INVALID_ARG: return kExitConfig;
    case COACT_ERR_RUNTIME:
    default: return kExitRuntime;
  }
}

const char* status_name(coact_status status) {
  switch (status) {
    case COACT_OK: return "ok";
    case COACT_ERR_CONFIG: return "config";
    case COACT_ERR_NO_INPUT: return "no-input";
    case COACT_ERR_VERIFY: return "verify";
    case COACT_ERR_INVALID_ARG: return "invalid-arg";
    case COACT_ERR_RUNTIME:
    default: return "runtime";
  }
}

int fail(coact_status status) {
  std::cerr << "coact: error: " << status_name(status) << ": " << coact_last_error() << "\n";
  return exit_code(status);
}

// Owned string coming back from the engine.
struct EngineString {
  char* ptr = nullptr;
  ~EngineString() { coact_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const std::uint64_t value = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end == text.c_str() || *end != '\0') return std::nullopt;
  return value;
}

// --seed flag if given, else the COACT_SEED environment variable.
std::optional<std::uint64_t> effective_seed(const std::string& flag_value) {
  if (!flag_value.empty()) return parse_seed(flag_value);
  if (const char* env = std::getenv("COACT_SEED"); env && *env) return parse_seed(env);
  return std::nullopt;
}

// Expands directory arguments to the session logs inside them, sorted.
std::vector<std::string> collect_logs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.ends_with(".jsonl") || name.ends_with(".jsonl.gz")) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

int cmd_simulate(const std::string& config, const std::string& seed_flag, int sessions,
                 const std::string& out_dir, bool verbose) {
  Json overrides = Json::object();
  if (auto seed = effective_seed(seed_flag)) overrides["seed"] = *seed;
  if (!seed_flag.empty() && !parse_seed(seed_flag)) {
    std::cerr << "coact: error: config: --seed is not a 64-bit unsigned integer\n";
    return kExitConfig;
  }
  if (sessions > 0) overrides["sessions"] = sessions;

  EngineString summary;
  const std::string overrides_text = overrides.dump();
  coact_status rc = coact_simulate(config.c_str(), overrides_text.c_str(), out_dir.c_str(),
                                   &summary.ptr);
  if (rc != COACT_OK) return fail(rc);

  Json s = Json::parse(summary.str());
  if (verbose) {
    for (const auto& f : s["files"]) {
      std::cout << f["file"].get<std::string>() << "  turns=" << f["turns"] << "\n";
    }
  }
  std::cout << "simulated " << s["sessions"] << " sessions, " << s["turns"] << " turns, seed "
            << s["seed"] << " -> " << s["out_dir"].get<std::string>() << "\n";
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& reference,
                double tolerance, bool as_json, const std::string& plot_path) {
  const auto logs = collect_logs(inputs);
  if (logs.empty()) {
    std::cerr << "coact: error: no-input: no session logs found\n";
    return kExitNoInput;
  }
  const std::string paths = Json(logs).dump();

  EngineString report;
  coact_status rc = coact_analyze(paths.c_str(), reference.empty() ? nullptr : reference.c_str(),
                                  tolerance, &report.ptr);
  if (rc != COACT_OK && rc != COACT_ERR_VERIFY) return fail(rc);

  if (as_json) {
    std::cout << report.str() << "\n";
  } else {
    EngineString table;
    coact_status rrc = coact_render(report.ptr, "table", &table.ptr);
    if (rrc != COACT_OK) return fail(rrc);
    std::cout << table.str();
  }
  if (!plot_path.empty()) {
    EngineString svg;
    coact_status prc = coact_render(report.ptr, "svg", &svg.ptr);
    if (prc != COACT_OK) return fail(prc);
    if (!write_text_file(plot_path, svg.str())) {
      std::cerr << "coact: error: runtime: cannot write " << plot_path << "\n";
      return kExitRuntime;
    }
  }
  if (rc == COACT_ERR_VERIFY) {
    std::cerr << "coact: error: verify: " << coact_last_error() << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_calibrate(const std::string& config, const std::string& reference,
                  const std::string& seed_flag, int budget, int sessions,
                  const std::string& out_policy, bool as_json) {
  Json overrides = Json::object();
  if (auto seed = effective_seed(seed_flag)) overrides["seed"] = *seed;
  if (!seed_flag.empty() && !parse_seed(seed_flag)) {
    std::cerr << "coact: error: config: --seed is not a 64-bit unsigned integer\n";
    return kExitConfig;
  }

  EngineString result;
  const std::string overrides_text = overrides.dump();
  coact_status rc = coact_calibrate(config.c_str(), reference.empty() ? nullptr : reference.c_str(),
                                    overrides_text.c_str(), budget, sessions, &result.ptr);
  if (rc != COACT_OK) return fail(rc);

  Json r = Json::parse(result.str());
  if (!out_policy.empty()) {
    if (!write_text_file(out_policy, r["policy_toml"].get<std::string>())) {
      std::cerr << "coact: error: runtime: cannot write " << out_policy << "\n";
      return kExitRuntime;
    }
  }
  if (as_json) {
    std::cout << result.str() << "\n";
  } else {
    std::cout << "calibrated in " << r["evaluations"] << " evaluations, score "
              << r["score"] << " pp";
    if (!out_policy.empty()) std::cout << " -> " << out_policy;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_replay(const std::vector<std::string>& inputs, bool verify) {
  const auto logs = collect_logs(inputs);
  if (logs.empty()) {
    std::cerr << "coact: error: no-input: no session logs found\n";
    return kExitNoInput;
  }
  int worst = kExitOk;
  for (const auto& path : logs) {
    EngineString result;
    coact_status rc = coact_replay(path.c_str(), verify ? 1 : 0, &result.ptr);
    if (rc == COACT_OK) {
      std::cout << (verify ? "verified " : "replayed ") << path << "\n";
      continue;
    }
    std::cerr << "coact: error: " << status_name(rc) << ": " << path << ": "
              << coact_last_error() << "\n";
    if (worst == kExitOk) worst = exit_code(rc);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic human-agent co-creation harness"};
  app.require_subcommand(1);

  // simulate
  std::string sim_config;
  std::string sim_seed;
  int sim_sessions = 0;
  std::string sim_out = "out";
  bool sim_verbose = false;
  auto* simulate = app.add_subcommand("simulate", "run sessions and write JSONL logs");
  simulate->add_option("--config", sim_config, "TOML config file")->required();
  simulate->add_option("--seed", sim_seed, "seed override (env COACT_SEED as fallback)");
  simulate->add_option("--sessions", sim_sessions, "session count override");
  simulate->add_option("--out", sim_out, "output directory");
  simulate->add_flag("-v,--verbose", sim_verbose, "list each written log");

  // analyze
  std::vector<std::string> an_inputs;
  std::string an_reference;
  double an_tolerance = 5.0;
  bool an_json = false;
  std::string an_plot;
  auto* analyze = app.add_subcommand("analyze", "aggregate involvement statistics from logs");
  analyze->add_option("logs", an_inputs, "session log files or directories")->required();
  analyze->add_option("--reference", an_reference, "reference stats JSON path, or 'builtin'");
  analyze->add_option("--tolerance", an_tolerance, "allowed deviation in percentage points")
      ->check(CLI::NonNegativeNumber);
  analyze->add_flag("--json", an_json, "emit the machine-readable report");
  analyze->add_option("--plot", an_plot, "write an SVG chart to this path");

  // calibrate
  std::string cal_config;
  std::string cal_reference;
  std::string cal_seed;
  int cal_budget = 40;
  int cal_sessions = 0;
  std::string cal_out;
  bool cal_json = false;
  auto* calibrate = app.add_subcommand("calibrate", "fit the user policy to reference stats");
  calibrate->add_option("--config", cal_config, "TOML config file")->required();
  calibrate->add_option("--reference", cal_reference, "reference stats JSON path, or 'builtin'");
  calibrate->add_option("--seed", cal_seed, "seed override (env COACT_SEED as fallback)");
  calibrate->add_option("--budget", cal_budget, "candidate evaluations")->check(CLI::PositiveNumber);
  calibrate->add_option("--sessions", cal_sessions, "sessions per evaluation");
  calibrate->add_option("--out", cal_out, "write the fitted policy TOML here");
  calibrate->add_flag("--json", cal_json, "emit the machine-readable result");

  // replay
  std::vector<std::string> rp_inputs;
  bool rp_verify = false;
  auto* replay = app.add_subcommand("replay", "re-execute logged canvas operations");
  replay->add_option("logs", rp_inputs, "session log files or directories")->required();
  replay->add_flag("--verify", rp_verify, "compare the result against the logged final canvas");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(sim_config, sim_seed, sim_sessions, sim_out, sim_verbose);
    }
    if (analyze->parsed()) {
      return cmd_analyze(an_inputs, an_reference, an_tolerance, an_json, an_plot);
    }
    if (calibrate->parsed()) {
      return cmd_calibrate(cal_config, cal_reference, cal_seed, cal_budget, cal_sessions,
                           cal_out, cal_json);
    }
    if (replay->parsed()) {
      return cmd_replay(rp_inputs, rp_verify);
    }
  } catch (const std::exception& e) {
    std::cerr << "coact: error: runtime: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
