#pragma once

#include <optional>
#include <string>
#include <vector>

namespace coact::sim {

// The five ways a user can relate to a running agent. Enum order matches the
// canonical combination-label order used in reports: O, C, D, H, T.
enum class Category { Observational, Concurrent, Directive, HandsOff, Terminating };

inline constexpr Category kAllCategories[] = {Category::Observational, Category::Concurrent,
                                              Category::Directive, Category::HandsOff,
                                              Category::Terminating};

char category_letter(Category category);
const char* category_name(Category category);
std::optional<Category> category_from_letter(char letter);

// The ten concrete behaviors, each belonging to exactly one category.
enum class ActionCode {
  FullDelegation,                   // H
  ObservationalMonitoring,          // O
  ExecutionTermination,             // T
  InstructionBasedSteering,         // D
  SwitchingTasks,                   // D
  IntermediateResultAppropriation,  // C
  ArtifactTakeover,                 // C
  InSituCoEditing,                  // C
  OpportunisticTakeover,            // C
  DemonstrationBasedSteering,       // C
};

inline constexpr int kCodeCount = 10;

Category code_category(ActionCode code);
const char* code_name(ActionCode code);
std::optional<ActionCode> code_from_name(const std::string& name);
const std::vector<ActionCode>& codes_in(Category category);

// The six reasons an observing user steps in.
enum class Trigger {
  IdeaSpark,
  EarlyOutcomeVisibility,
  FineGrainedDetailing,
  MisalignedInterpretation,
  QualityDrop,
  EmergingNewTask,
};

inline constexpr Trigger kAllTriggers[] = {
    Trigger::IdeaSpark,       Trigger::EarlyOutcomeVisibility,   Trigger::FineGrainedDetailing,
    Trigger::MisalignedInterpretation, Trigger::QualityDrop,     Trigger::EmergingNewTask};

const char* trigger_name(Trigger trigger);
std::optional<Trigger> trigger_from_name(const std::string& name);

// Which intervention categories a trigger can lead to. The first three are
// concurrent-only; misalignment and quality reach all three; a brand-new task
// is delivered verbally or ends the run.
bool trigger_allows(Trigger trigger, Category category);

// Situational conditions deciding which category a triggered user adopts.
enum class MentalModel { Has, None };
enum class TaskImportance { UserMuchMore, SimilarOrModeratelyMore, NoUserTask };
enum class Modality { VerbalEasier, DirectEasier, Uncertain };
enum class Expectation { DirectCollabSucceeds, VerbalUnderstood, AgentIncapable };

struct EnablingFactors {
  MentalModel mental_model = MentalModel::Has;
  TaskImportance importance = TaskImportance::SimilarOrModeratelyMore;
  Modality modality = Modality::DirectEasier;
  Expectation expectation = Expectation::DirectCollabSucceeds;
};

const char* mental_model_name(MentalModel value);
const char* importance_name(TaskImportance value);
const char* modality_name(Modality value);
const char* expectation_name(Expectation value);

// Per-factor compatibility. Modality and expectation only constrain the
// intervention categories; they say nothing about observing or hands-off.
bool factor_allows(MentalModel value, Category category);
bool factor_allows(TaskImportance value, Category category);
bool factor_allows(Modality value, Category category);
bool factor_allows(Expectation value, Category category);

// All four factors at once.
bool factors_allow(const EnablingFactors& factors, Category category);

}  // namespace coact::sim
