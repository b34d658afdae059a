#pragma once

#include <string>
#include <vector>

#include "analysis/reference.hpp"
#include "analysis/stats.hpp"

namespace coact::analysis {

struct Verdict {
  std::string metric;
  double expected = 0.0;  // percentage points
  double actual = 0.0;
  double delta = 0.0;     // actual - expected
  bool pass = false;

  Json to_json() const;
  static Verdict from_json(const Json& j);
};

struct CompareReport {
  double tolerance_pp = 5.0;
  std::vector<Verdict> verdicts;
  bool all_pass = true;

  Json to_json() const;
  static CompareReport from_json(const Json& j);
};

// Checks a measured distribution against the reference: the five category
// presence rates, the four most common combinations, and the share of turns
// with an observation loop. All metrics are percentages compared within
// +/- tolerance_pp percentage points.
CompareReport compare(const Distribution& measured, const ReferenceStats& reference,
                      double tolerance_pp, bool include_h_loop = true);

}  // namespace coact::analysis
