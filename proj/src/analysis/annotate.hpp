#pragma once

#include <set>
#include <string>
#include <vector>

#include "session/log.hpp"
#include "sim/decision.hpp"

namespace coact::analysis {

using Json = nlohmann::json;

// One segmented turn with everything the coders need: the events in its
// span, the recorded outcome, and the simulator's own records when present.
struct TurnEvents {
  int turn = 0;
  std::string request;
  std::string status;
  int iterations = 0;
  std::vector<Json> ops;        // canvas mutations in span, in order
  std::vector<Json> signals;    // request/attention/additional_input/terminate
  std::vector<Json> decisions;  // simulator ground truth, when present
  Json trace;                   // simulator trace event payload, or null
  Json turn_end;                // recorded summary
};

// Splits a log into turns (one per request). Throws Error(CorruptLog) when a
// started turn has no turn_end or events are malformed.
std::vector<TurnEvents> segment_turns(const session::SessionLog& log);

struct TurnAnnotation {
  int turn = 0;
  std::set<char> categories;          // subset of {H,O,C,D,T}
  std::set<std::string> codes;        // snake_case code names
  std::set<char> loops;               // subset of {g,h,i,j}
  std::set<std::string> triggers;     // trigger names observed
  bool ground_truth = false;          // from simulator records vs rule-based
  bool low_confidence = false;        // rule-based without corroborating records

  Json to_json() const;
};

// Annotation from the simulator's own records (decision/trace/turn_end
// events); loops are re-derived from the trace steps rather than trusted.
TurnAnnotation annotate_ground_truth(const TurnEvents& turn);

// Rule-based coder over the observable ledger only (ops and signals): the
// fallback for logs without simulator records, and the cross-check for logs
// with them. Needs the whole log to replay canvas state for area decisions.
std::vector<TurnAnnotation> annotate_rule_based(const session::SessionLog& log);

// Ground truth where available, rule-based otherwise.
std::vector<TurnAnnotation> annotate(const session::SessionLog& log);

// Cross-check of the two coders over one log.
struct Agreement {
  int turns = 0;
  int disagreements = 0;
  std::vector<std::string> causes;  // one line per disagreeing turn
  double rate() const { return turns == 0 ? 1.0 : 1.0 - static_cast<double>(disagreements) / turns; }
  Json to_json() const;
};
Agreement coder_agreement(const session::SessionLog& log);

}  // namespace coact::analysis
