#include "analysis/stats.hpp"

#include <cmath>

#include "support/error.hpp"

namespace coact::analysis {

std::string combo_label(const std::set<char>& categories) {
  std::string out;
  for (char c : kComboOrder) {
    if (!categories.count(c)) continue;
    if (!out.empty()) out += "+";
    out += "(";
    out += c;
    out += ")";
  }
  return out;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

Distribution distribution(const std::vector<TurnAnnotation>& turns) {
  if (turns.empty()) throw Error(ErrorCode::EmptyCorpus, "no annotated turns");
  Distribution d;
  d.total = static_cast<int>(turns.size());
  for (char c : kPresenceOrder) d.presence_count[c] = 0;
  int h_loops = 0;
  for (const auto& t : turns) {
    for (char c : t.categories) {
      if (d.presence_count.count(c)) ++d.presence_count[c];
    }
    ++d.combo_count[combo_label(t.categories)];
    if (t.loops.count('h')) ++h_loops;
  }
  const double n = static_cast<double>(d.total);
  for (const auto& [c, k] : d.presence_count) d.presence_pct[c] = 100.0 * k / n;
  for (const auto& [label, k] : d.combo_count) d.combo_pct[label] = 100.0 * k / n;
  d.h_loop_share_pct = 100.0 * h_loops / n;
  return d;
}

Json Distribution::to_json() const {
  Json presence = Json::object();
  for (char c : kPresenceOrder) {
    const std::string key(1, c);
    presence[key] = Json{{"count", presence_count.at(c)},
                         {"pct", round2(presence_pct.at(c))}};
  }
  Json combos = Json::object();
  for (const auto& [label, k] : combo_count) {
    combos[label] = Json{{"count", k}, {"pct", round2(combo_pct.at(label))}};
  }
  return Json{{"total", total},
              {"presence", presence},
              {"combinations", combos},
              {"h_loop_share_pct", round2(h_loop_share_pct)}};
}

Distribution Distribution::from_json(const Json& j) {
  Distribution d;
  try {
    d.total = j.at("total").get<int>();
    for (const auto& [key, row] : j.at("presence").items()) {
      if (key.size() != 1) throw Error(ErrorCode::CorruptLog, "bad presence key");
      d.presence_count[key[0]] = row.at("count").get<int>();
      d.presence_pct[key[0]] = row.at("pct").get<double>();
    }
    for (const auto& [label, row] : j.at("combinations").items()) {
      d.combo_count[label] = row.at("count").get<int>();
      d.combo_pct[label] = row.at("pct").get<double>();
    }
    d.h_loop_share_pct = j.value("h_loop_share_pct", 0.0);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::CorruptLog, std::string("bad distribution: ") + e.what());
  }
  return d;
}

}  // namespace coact::analysis
