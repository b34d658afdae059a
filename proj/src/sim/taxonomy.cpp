#include "sim/taxonomy.hpp"

namespace coact::sim {

char category_letter(Category category) {
  switch (category) {
    case Category::Observational: return 'O';
    case Category::Concurrent: return 'C';
    case Category::Directive: return 'D';
    case Category::HandsOff: return 'H';
    case Category::Terminating: return 'T';
  }
  return '?';
}

const char* category_name(Category category) {
  switch (category) {
    case Category::Observational: return "observational";
    case Category::Concurrent: return "concurrent";
    case Category::Directive: return "directive";
    case Category::HandsOff: return "hands_off";
    case Category::Terminating: return "terminating";
  }
  return "unknown";
}

std::optional<Category> category_from_letter(char letter) {
  switch (letter) {
    case 'O': return Category::Observational;
    case 'C': return Category::Concurrent;
    case 'D': return Category::Directive;
    case 'H': return Category::HandsOff;
    case 'T': return Category::Terminating;
    default: return std::nullopt;
  }
}

Category code_category(ActionCode code) {
  switch (code) {
    case ActionCode::FullDelegation: return Category::HandsOff;
    case ActionCode::ObservationalMonitoring: return Category::Observational;
    case ActionCode::ExecutionTermination: return Category::Terminating;
    case ActionCode::InstructionBasedSteering:
    case ActionCode::SwitchingTasks: return Category::Directive;
    case ActionCode::IntermediateResultAppropriation:
    case ActionCode::ArtifactTakeover:
    case ActionCode::InSituCoEditing:
    case ActionCode::OpportunisticTakeover:
    case ActionCode::DemonstrationBasedSteering: return Category::Concurrent;
  }
  return Category::Observational;
}

const char* code_name(ActionCode code) {
  switch (code) {
    case ActionCode::FullDelegation: return "full_delegation";
    case ActionCode::ObservationalMonitoring: return "observational_monitoring";
    case ActionCode::ExecutionTermination: return "execution_termination";
    case ActionCode::InstructionBasedSteering: return "instruction_based_steering";
    case ActionCode::SwitchingTasks: return "switching_tasks";
    case ActionCode::IntermediateResultAppropriation: return "intermediate_result_appropriation";
    case ActionCode::ArtifactTakeover: return "artifact_takeover";
    case ActionCode::InSituCoEditing: return "in_situ_co_editing";
    case ActionCode::OpportunisticTakeover: return "opportunistic_takeover";
    case ActionCode::DemonstrationBasedSteering: return "demonstration_based_steering";
  }
  return "unknown";
}

std::optional<ActionCode> code_from_name(const std::string& name) {
  static const ActionCode all[] = {
      ActionCode::FullDelegation,          ActionCode::ObservationalMonitoring,
      ActionCode::ExecutionTermination,    ActionCode::InstructionBasedSteering,
      ActionCode::SwitchingTasks,          ActionCode::IntermediateResultAppropriation,
      ActionCode::ArtifactTakeover,        ActionCode::InSituCoEditing,
      ActionCode::OpportunisticTakeover,   ActionCode::DemonstrationBasedSteering};
  for (ActionCode code : all)
    if (name == code_name(code)) return code;
  return std::nullopt;
}

const std::vector<ActionCode>& codes_in(Category category) {
  static const std::vector<ActionCode> observational{ActionCode::ObservationalMonitoring};
  static const std::vector<ActionCode> concurrent{
      ActionCode::IntermediateResultAppropriation, ActionCode::ArtifactTakeover,
      ActionCode::InSituCoEditing, ActionCode::OpportunisticTakeover,
      ActionCode::DemonstrationBasedSteering};
  static const std::vector<ActionCode> directive{ActionCode::InstructionBasedSteering,
                                                 ActionCode::SwitchingTasks};
  static const std::vector<ActionCode> hands_off{ActionCode::FullDelegation};
  static const std::vector<ActionCode> terminating{ActionCode::ExecutionTermination};
  switch (category) {
    case Category::Observational: return observational;
    case Category::Concurrent: return concurrent;
    case Category::Directive: return directive;
    case Category::HandsOff: return hands_off;
    case Category::Terminating: return terminating;
  }
  return observational;
}

const char* trigger_name(Trigger trigger) {
  switch (trigger) {
    case Trigger::IdeaSpark: return "idea_spark";
    case Trigger::EarlyOutcomeVisibility: return "early_outcome_visibility";
    case Trigger::FineGrainedDetailing: return "fine_grained_detailing";
    case Trigger::MisalignedInterpretation: return "misaligned_interpretation";
    case Trigger::QualityDrop: return "quality_drop";
    case Trigger::EmergingNewTask: return "emerging_new_task";
  }
  return "unknown";
}

std::optional<Trigger> trigger_from_name(const std::string& name) {
  for (Trigger trigger : kAllTriggers)
    if (name == trigger_name(trigger)) return trigger;
  return std::nullopt;
}

bool trigger_allows(Trigger trigger, Category category) {
  switch (trigger) {
    case Trigger::IdeaSpark:
    case Trigger::EarlyOutcomeVisibility:
    case Trigger::FineGrainedDetailing:
      return category == Category::Concurrent;
    case Trigger::MisalignedInterpretation:
    case Trigger::QualityDrop:
      return category == Category::Concurrent || category == Category::Directive ||
             category == Category::Terminating;
    case Trigger::EmergingNewTask:
      return category == Category::Directive || category == Category::Terminating;
  }
  return false;
}

const char* mental_model_name(MentalModel value) {
  return value == MentalModel::Has ? "has" : "none";
}

const char* importance_name(TaskImportance value) {
  switch (value) {
    case TaskImportance::UserMuchMore: return "user_much_more";
    case TaskImportance::SimilarOrModeratelyMore: return "similar_or_moderately_more";
    case TaskImportance::NoUserTask: return "no_user_task";
  }
  return "unknown";
}

const char* modality_name(Modality value) {
  switch (value) {
    case Modality::VerbalEasier: return "verbal_easier";
    case Modality::DirectEasier: return "direct_easier";
    case Modality::Uncertain: return "uncertain";
  }
  return "unknown";
}

const char* expectation_name(Expectation value) {
  switch (value) {
    case Expectation::DirectCollabSucceeds: return "direct_collab_succeeds";
    case Expectation::VerbalUnderstood: return "verbal_understood";
    case Expectation::AgentIncapable: return "agent_incapable";
  }
  return "unknown";
}

bool factor_allows(MentalModel value, Category category) {
  if (value == MentalModel::Has) return true;
  return category == Category::Observational;
}

bool factor_allows(TaskImportance value, Category category) {
  switch (value) {
    case TaskImportance::UserMuchMore:
      return category == Category::HandsOff;
    case TaskImportance::SimilarOrModeratelyMore:
      return category == Category::Directive || category == Category::Terminating ||
             category == Category::Observational;
    case TaskImportance::NoUserTask:
      return category == Category::Concurrent || category == Category::Terminating ||
             category == Category::Observational;
  }
  return false;
}

bool factor_allows(Modality value, Category category) {
  // Modality only matters once the user decides to step in.
  if (category == Category::Observational || category == Category::HandsOff) return true;
  switch (value) {
    case Modality::VerbalEasier: return category == Category::Directive;
    case Modality::DirectEasier: return category == Category::Concurrent;
    case Modality::Uncertain: return category == Category::Terminating;
  }
  return false;
}

bool factor_allows(Expectation value, Category category) {
  if (category == Category::Observational || category == Category::HandsOff) return true;
  switch (value) {
    case Expectation::DirectCollabSucceeds: return category == Category::Concurrent;
    case Expectation::VerbalUnderstood: return category == Category::Directive;
    case Expectation::AgentIncapable: return category == Category::Terminating;
  }
  return false;
}

bool factors_allow(const EnablingFactors& factors, Category category) {
  return factor_allows(factors.mental_model, category) &&
         factor_allows(factors.importance, category) &&
         factor_allows(factors.modality, category) && factor_allows(factors.expectation, category);
}

}  // namespace coact::sim
