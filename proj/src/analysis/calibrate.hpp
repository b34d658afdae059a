#pragma once

#include <cstdint>
#include <functional>

#include "analysis/compare.hpp"
#include "analysis/reference.hpp"
#include "analysis/stats.hpp"
#include "sim/policy.hpp"

namespace coact::analysis {

// Produces the aggregate distribution a candidate policy yields; injected so
// calibration can run against the real harness or a cheap surrogate.
using EvalFn = std::function<Distribution(const sim::SimPolicy&)>;

// Total absolute error, in percentage points, over the compared metrics:
// category presences, top combinations, and the observation-loop share.
double calibration_score(const Distribution& measured, const ReferenceStats& reference);

struct CalibrationResult {
  sim::SimPolicy policy;
  double score = -1.0;  // -1 when never evaluated (zero budget)
  int evaluations = 0;
  Distribution best;    // distribution the best policy produced

  Json to_json() const;
};

// Deterministic stochastic search: evaluates `budget` candidate policies
// (the initial one first, then jittered and fresh random points) and keeps
// the lowest-scoring. A zero or negative budget returns the initial policy
// untouched. Throws Error(SearchSpaceEmpty) if there is nothing to tune.
CalibrationResult calibrate(const ReferenceStats& reference, const sim::SimPolicy& initial,
                            int budget, std::uint64_t seed, const EvalFn& eval);

}  // namespace coact::analysis
