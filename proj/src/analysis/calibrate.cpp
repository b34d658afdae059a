#include "analysis/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "support/error.hpp"
#include "support/rng.hpp"

namespace coact::analysis {

double calibration_score(const Distribution& measured, const ReferenceStats& reference) {
  double score = 0.0;
  for (char c : kPresenceOrder) {
    const auto it = measured.presence_pct.find(c);
    const double actual = it == measured.presence_pct.end() ? 0.0 : it->second;
    score += std::abs(actual - reference.presence_pct.at(c));
  }
  for (const auto& label : reference.top_combos(4)) {
    const auto it = measured.combo_pct.find(label);
    const double actual = it == measured.combo_pct.end() ? 0.0 : it->second;
    score += std::abs(actual - reference.combo_pct(label));
  }
  score += std::abs(measured.h_loop_share_pct - reference.h_loop_share_pct);
  return score;
}

Json CalibrationResult::to_json() const {
  return Json{{"policy", policy.to_config()},
              {"score", score},
              {"evaluations", evaluations},
              {"distribution", evaluations > 0 ? best.to_json() : Json()}};
}

namespace {

// Keeps the one cross-field constraint satisfiable: the two importance
// levels are branches of a single draw, so their probabilities cannot
// exceed one together.
void repair(sim::SimPolicy& p) {
  const double sum = p.importance_high_p + p.importance_low_p;
  if (sum > 1.0) {
    p.importance_high_p /= sum;
    p.importance_low_p /= sum;
  }
}

}  // namespace

CalibrationResult calibrate(const ReferenceStats& reference, const sim::SimPolicy& initial,
                            int budget, std::uint64_t seed, const EvalFn& eval) {
  const auto& space = sim::policy_search_space();
  if (space.empty()) throw Error(ErrorCode::SearchSpaceEmpty, "no tunable parameters");

  CalibrationResult result;
  result.policy = initial;
  if (budget <= 0) return result;

  Rng rng(seed);
  auto evaluate = [&](sim::SimPolicy p) {
    repair(p);
    p.validate();
    Distribution d = eval(p);
    ++result.evaluations;
    return std::pair<double, std::pair<sim::SimPolicy, Distribution>>{
        calibration_score(d, reference), {p, d}};
  };

  auto [best_score, best] = evaluate(initial);
  result.policy = best.first;
  result.best = best.second;
  result.score = best_score;

  while (result.evaluations < budget) {
    sim::SimPolicy candidate = result.policy;
    if (rng.chance(0.5)) {
      // Local jitter around the incumbent on a few parameters.
      const int k = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < k; ++i) {
        const auto& param = space[rng.below(space.size())];
        const double span = param.max - param.min;
        double value = candidate.*(param.field) + (rng.uniform01() * 2.0 - 1.0) * 0.25 * span;
        candidate.*(param.field) = std::clamp(value, param.min, param.max);
      }
    } else {
      // Fresh random point for global coverage.
      for (const auto& param : space) {
        candidate.*(param.field) = param.min + rng.uniform01() * (param.max - param.min);
      }
    }
    auto [score, entry] = evaluate(candidate);
    if (score < best_score) {
      best_score = score;
      result.policy = entry.first;
      result.best = entry.second;
      result.score = score;
    }
  }
  return result;
}

}  // namespace coact::analysis
