#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "analysis/annotate.hpp"

namespace coact::analysis {

// Canonical order for category letters inside a combination label.
inline constexpr char kComboOrder[] = {'O', 'C', 'D', 'H', 'T'};
// Presentation order for presence rows (most to least common in practice).
inline constexpr char kPresenceOrder[] = {'H', 'O', 'C', 'D', 'T'};

// "(O)+(C)+(H)" for {C,H,O}; letters always in canonical order.
std::string combo_label(const std::set<char>& categories);

// Aggregate involvement statistics over a corpus of annotated turns.
struct Distribution {
  int total = 0;
  std::map<char, int> presence_count;      // turns where the category appears
  std::map<char, double> presence_pct;
  std::map<std::string, int> combo_count;  // exact category sets, by label
  std::map<std::string, double> combo_pct;
  double h_loop_share_pct = 0.0;           // turns whose walk looped on observation

  Json to_json() const;
  static Distribution from_json(const Json& j);
};

// Throws Error(EmptyCorpus) when there is nothing to aggregate.
Distribution distribution(const std::vector<TurnAnnotation>& turns);

// Round to two decimals, the precision used for reporting percentages.
double round2(double x);

}  // namespace coact::analysis
