#include "sim/policy.hpp"

#include <fstream>
#include <sstream>

#include "support/error.hpp"
#include "support/toml.hpp"

namespace coact::sim {

double SimPolicy::hazard_for(Trigger trigger) const {
  switch (trigger) {
    case Trigger::IdeaSpark: return hazard_idea;
    case Trigger::EarlyOutcomeVisibility: return hazard_early;
    case Trigger::FineGrainedDetailing: return hazard_fine;
    case Trigger::MisalignedInterpretation: return hazard_misaligned;
    case Trigger::QualityDrop: return hazard_quality;
    case Trigger::EmergingNewTask: return hazard_emerging;
  }
  return 0.0;
}

void SimPolicy::validate() const {
  auto probability = [](double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
      throw Error(ErrorCode::ConfigInvalid, std::string(name) + " must be in [0, 1]");
  };
  auto non_negative = [](double value, const char* name) {
    if (!(value >= 0.0))
      throw Error(ErrorCode::ConfigInvalid, std::string(name) + " must be >= 0");
  };
  probability(mental_model_p, "mental_model_p");
  probability(importance_high_p, "importance_high_p");
  probability(importance_low_p, "importance_low_p");
  if (importance_high_p + importance_low_p > 1.0)
    throw Error(ErrorCode::ConfigInvalid, "importance_high_p + importance_low_p exceeds 1");
  probability(importance_decay, "importance_decay");
  probability(no_intervention_p, "no_intervention_p");
  probability(coherence, "coherence");
  if (!(favor_weight >= 1.0))
    throw Error(ErrorCode::ConfigInvalid, "favor_weight must be >= 1");
  non_negative(hazard_idea, "hazards.idea_spark");
  non_negative(hazard_early, "hazards.early_visibility");
  non_negative(hazard_fine, "hazards.fine_grained");
  non_negative(hazard_misaligned, "hazards.misaligned");
  non_negative(hazard_quality, "hazards.quality_drop");
  non_negative(hazard_emerging, "hazards.emerging_new_task");
  non_negative(modality_verbal, "modality.verbal");
  non_negative(modality_direct, "modality.direct");
  non_negative(modality_uncertain, "modality.uncertain");
  if (modality_verbal + modality_direct + modality_uncertain <= 0.0)
    throw Error(ErrorCode::ConfigInvalid, "modality distribution has no mass");
  non_negative(expect_direct, "expectation.direct_collab");
  non_negative(expect_verbal, "expectation.verbal_understood");
  non_negative(expect_incapable, "expectation.agent_incapable");
  if (expect_direct + expect_verbal + expect_incapable <= 0.0)
    throw Error(ErrorCode::ConfigInvalid, "expectation distribution has no mass");
}

Json SimPolicy::to_config() const {
  return Json{
      {"policy",
       Json{{"mental_model_p", mental_model_p},
            {"importance_high_p", importance_high_p},
            {"importance_low_p", importance_low_p},
            {"importance_decay", importance_decay},
            {"no_intervention_p", no_intervention_p},
            {"coherence", coherence},
            {"favor_weight", favor_weight}}},
      {"hazards",
       Json{{"idea_spark", hazard_idea},
            {"early_visibility", hazard_early},
            {"fine_grained", hazard_fine},
            {"misaligned", hazard_misaligned},
            {"quality_drop", hazard_quality},
            {"emerging_new_task", hazard_emerging}}},
      {"modality",
       Json{{"verbal", modality_verbal}, {"direct", modality_direct}, {"uncertain", modality_uncertain}}},
      {"expectation",
       Json{{"direct_collab", expect_direct},
            {"verbal_understood", expect_verbal},
            {"agent_incapable", expect_incapable}}}};
}

SimPolicy SimPolicy::from_config(const Json& config) {
  SimPolicy policy;
  if (!config.is_object()) throw Error(ErrorCode::ConfigInvalid, "policy config must be an object");
  const Json empty = Json::object();
  const Json& top = config.contains("policy") ? config.at("policy") : empty;
  auto read = [](const Json& table, const char* key, double fallback) {
    if (!table.contains(key)) return fallback;
    const Json& v = table.at(key);
    if (!v.is_number()) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be a number");
    return v.get<double>();
  };
  policy.mental_model_p = read(top, "mental_model_p", policy.mental_model_p);
  policy.importance_high_p = read(top, "importance_high_p", policy.importance_high_p);
  policy.importance_low_p = read(top, "importance_low_p", policy.importance_low_p);
  policy.importance_decay = read(top, "importance_decay", policy.importance_decay);
  policy.no_intervention_p = read(top, "no_intervention_p", policy.no_intervention_p);
  policy.coherence = read(top, "coherence", policy.coherence);
  policy.favor_weight = read(top, "favor_weight", policy.favor_weight);
  const Json& hazards = config.contains("hazards") ? config.at("hazards") : empty;
  policy.hazard_idea = read(hazards, "idea_spark", policy.hazard_idea);
  policy.hazard_early = read(hazards, "early_visibility", policy.hazard_early);
  policy.hazard_fine = read(hazards, "fine_grained", policy.hazard_fine);
  policy.hazard_misaligned = read(hazards, "misaligned", policy.hazard_misaligned);
  policy.hazard_quality = read(hazards, "quality_drop", policy.hazard_quality);
  policy.hazard_emerging = read(hazards, "emerging_new_task", policy.hazard_emerging);
  const Json& modality = config.contains("modality") ? config.at("modality") : empty;
  policy.modality_verbal = read(modality, "verbal", policy.modality_verbal);
  policy.modality_direct = read(modality, "direct", policy.modality_direct);
  policy.modality_uncertain = read(modality, "uncertain", policy.modality_uncertain);
  const Json& expectation = config.contains("expectation") ? config.at("expectation") : empty;
  policy.expect_direct = read(expectation, "direct_collab", policy.expect_direct);
  policy.expect_verbal = read(expectation, "verbal_understood", policy.expect_verbal);
  policy.expect_incapable = read(expectation, "agent_incapable", policy.expect_incapable);
  policy.validate();
  return policy;
}

SimPolicy SimPolicy::load(const std::string& path) {
  return from_config(load_config_file(path));
}

void SimPolicy::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write policy file: " + path);
  out << to_toml(to_config());
}

const std::vector<PolicyParam>& policy_search_space() {
  static const std::vector<PolicyParam> space{
      {"mental_model_p", 0.50, 1.00, &SimPolicy::mental_model_p},
      {"importance_high_p", 0.10, 0.80, &SimPolicy::importance_high_p},
      {"importance_low_p", 0.05, 0.60, &SimPolicy::importance_low_p},
      {"importance_decay", 0.02, 0.60, &SimPolicy::importance_decay},
      {"no_intervention_p", 0.00, 0.60, &SimPolicy::no_intervention_p},
      {"coherence", 0.30, 1.00, &SimPolicy::coherence},
      {"favor_weight", 1.00, 8.00, &SimPolicy::favor_weight},
      {"hazards.idea_spark", 0.00, 0.20, &SimPolicy::hazard_idea},
      {"hazards.early_visibility", 0.00, 0.20, &SimPolicy::hazard_early},
      {"hazards.fine_grained", 0.00, 0.25, &SimPolicy::hazard_fine},
      {"hazards.misaligned", 0.00, 1.00, &SimPolicy::hazard_misaligned},
      {"hazards.quality_drop", 0.00, 1.00, &SimPolicy::hazard_quality},
      {"hazards.emerging_new_task", 0.00, 0.20, &SimPolicy::hazard_emerging},
      {"modality.verbal", 0.05, 0.90, &SimPolicy::modality_verbal},
      {"modality.direct", 0.05, 0.90, &SimPolicy::modality_direct},
      {"modality.uncertain", 0.05, 0.90, &SimPolicy::modality_uncertain},
      {"expectation.direct_collab", 0.05, 0.90, &SimPolicy::expect_direct},
      {"expectation.verbal_understood", 0.05, 0.90, &SimPolicy::expect_verbal},
      {"expectation.agent_incapable", 0.05, 0.90, &SimPolicy::expect_incapable},
  };
  return space;
}

}  // namespace coact::sim
