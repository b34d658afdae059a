#pragma once

#include <string>

#include "analysis/compare.hpp"
#include "analysis/reference.hpp"
#include "analysis/stats.hpp"

namespace coact::analysis {

// Human-readable name for a category letter ("H" -> "hands-off").
std::string category_name(char letter);

// Fixed-width text report: presence table, combination table, loop share;
// reference columns and verdicts appear when the pointers are non-null.
std::string render_table(const Distribution& measured,
                         const ReferenceStats* reference = nullptr,
                         const CompareReport* report = nullptr);

// Self-contained SVG bar chart of category presence (measured next to
// reference when given).
std::string render_svg(const Distribution& measured,
                       const ReferenceStats* reference = nullptr);

}  // namespace coact::analysis
