#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sim/taxonomy.hpp"

namespace coact::sim {

using Json = nlohmann::json;

// Tunable parameters of the simulated user. Probabilities are per decision
// point; trigger hazards are per-boundary firing probabilities (clamped to
// [0,1] at the point of use).
struct SimPolicy {
  // Decision-walk parameters.
  double mental_model_p = 0.92;    // P(user has a mental model of the task)
  double importance_high_p = 0.50; // P(own work starts far more important)
  double importance_low_p = 0.20;  // P(user starts with no own task)
  double importance_decay = 0.20;  // drop per hands-off boundary as own work progresses
  double no_intervention_p = 0.20; // triggered user holds back anyway
  double coherence = 0.85;         // expectation lines up with modality preference
  double favor_weight = 4.0;       // weight multiplier for trigger-favored codes

  // Per-trigger hazards.
  double hazard_idea = 0.03;
  double hazard_early = 0.03;
  double hazard_fine = 0.05;
  double hazard_misaligned = 0.55;
  double hazard_quality = 0.60;
  double hazard_emerging = 0.02;

  // Intervention-modality preference distribution.
  double modality_verbal = 0.38;
  double modality_direct = 0.46;
  double modality_uncertain = 0.16;

  // Response-expectation distribution (sampled fresh when not coherent).
  double expect_direct = 0.46;
  double expect_verbal = 0.38;
  double expect_incapable = 0.16;

  double hazard_for(Trigger trigger) const;

  // Throws Error(ConfigInvalid) when a probability leaves [0,1], a hazard is
  // negative, or a distribution has no mass.
  void validate() const;

  // Two-level object tree ({policy: {...}, hazards: {...}, ...}) compatible
  // with the TOML reader/writer.
  Json to_config() const;
  static SimPolicy from_config(const Json& config);

  static SimPolicy load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const SimPolicy&) const = default;
};

// One tunable dimension of the calibration search.
struct PolicyParam {
  const char* name;
  double min;
  double max;
  double SimPolicy::* field;
};

// Every tunable field with its search bounds.
const std::vector<PolicyParam>& policy_search_space();

}  // namespace coact::sim
