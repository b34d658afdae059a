#pragma once

#include <string>
#include <utility>
#include <vector>

#include "analysis/stats.hpp"

namespace coact::analysis {

// The published involvement statistics the simulator is calibrated against:
// 214 coded turns from a ten-participant study.
struct ReferenceStats {
  int total = 214;
  std::map<char, int> presence_count;
  std::map<char, double> presence_pct;
  // Exact category combinations with their turn counts, ordered by count.
  std::vector<std::pair<std::string, int>> combos;
  double h_loop_share_pct = 10.3;
  double avg_turns_per_participant = 21.4;
  int min_turns_per_participant = 12;
  int max_turns_per_participant = 33;
  Json metadata = Json::object();

  int combo(const std::string& label) const;
  double combo_pct(const std::string& label) const;
  // The most common combinations, used as calibration targets.
  std::vector<std::string> top_combos(int n) const;

  Json to_json() const;
  static ReferenceStats from_json(const Json& j);
  static const ReferenceStats& builtin();
};

// Loads reference stats from a JSON file; throws Error(Io) / Error(CorruptLog).
ReferenceStats load_reference(const std::string& path);

// A synthetic corpus whose aggregate statistics reproduce the reference
// table exactly: one annotated turn per coded turn, carrying only its
// category combination.
std::vector<TurnAnnotation> reconstruct_reference_corpus();

}  // namespace coact::analysis
