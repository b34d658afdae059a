#include "analysis/compare.hpp"

#include <cmath>

namespace coact::analysis {

Json Verdict::to_json() const {
  return Json{{"metric", metric},
              {"expected", round2(expected)},
              {"actual", round2(actual)},
              {"delta", round2(delta)},
              {"pass", pass}};
}

Json CompareReport::to_json() const {
  Json rows = Json::array();
  for (const auto& v : verdicts) rows.push_back(v.to_json());
  return Json{{"tolerance_pp", tolerance_pp}, {"verdicts", rows}, {"all_pass", all_pass}};
}

Verdict Verdict::from_json(const Json& j) {
  Verdict v;
  v.metric = j.value("metric", std::string{});
  v.expected = j.value("expected", 0.0);
  v.actual = j.value("actual", 0.0);
  v.delta = j.value("delta", 0.0);
  v.pass = j.value("pass", false);
  return v;
}

CompareReport CompareReport::from_json(const Json& j) {
  CompareReport r;
  r.tolerance_pp = j.value("tolerance_pp", 5.0);
  r.all_pass = j.value("all_pass", true);
  for (const auto& row : j.value("verdicts", Json::array())) {
    r.verdicts.push_back(Verdict::from_json(row));
  }
  return r;
}

CompareReport compare(const Distribution& measured, const ReferenceStats& reference,
                      double tolerance_pp, bool include_h_loop) {
  CompareReport report;
  report.tolerance_pp = tolerance_pp;
  auto check = [&](const std::string& metric, double expected, double actual) {
    Verdict v;
    v.metric = metric;
    v.expected = expected;
    v.actual = actual;
    v.delta = actual - expected;
    v.pass = std::abs(v.delta) <= tolerance_pp + 1e-9;
    report.all_pass = report.all_pass && v.pass;
    report.verdicts.push_back(std::move(v));
  };
  for (char c : kPresenceOrder) {
    const auto it = measured.presence_pct.find(c);
    check(std::string("presence ") + c, reference.presence_pct.at(c),
          it == measured.presence_pct.end() ? 0.0 : it->second);
  }
  for (const auto& label : reference.top_combos(4)) {
    const auto it = measured.combo_pct.find(label);
    check("combination " + label, reference.combo_pct(label),
          it == measured.combo_pct.end() ? 0.0 : it->second);
  }
  if (include_h_loop) {
    check("h-loop share", reference.h_loop_share_pct, measured.h_loop_share_pct);
  }
  return report;
}

}  // namespace coact::analysis
