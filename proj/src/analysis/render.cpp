#include "analysis/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace coact::analysis {

namespace {

std::string fixed(double x, int precision = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string category_name(char letter) {
  switch (letter) {
    case 'H': return "hands-off";
    case 'O': return "observational";
    case 'C': return "concurrent";
    case 'D': return "directive";
    case 'T': return "terminating";
    default: return std::string(1, letter);
  }
}

std::string render_table(const Distribution& measured, const ReferenceStats* reference,
                         const CompareReport* report) {
  std::ostringstream out;
  out << "turns analyzed: " << measured.total << "\n\n";

  out << pad_right("category", 20) << pad_left("turns", 7) << pad_left("share%", 9);
  if (reference) out << pad_left("ref%", 9) << pad_left("delta", 8);
  out << "\n";
  for (char c : kPresenceOrder) {
    const double pct = measured.presence_pct.count(c) ? measured.presence_pct.at(c) : 0.0;
    const int count = measured.presence_count.count(c) ? measured.presence_count.at(c) : 0;
    out << pad_right(category_name(c) + " (" + std::string(1, c) + ")", 20)
        << pad_left(std::to_string(count), 7) << pad_left(fixed(pct), 9);
    if (reference) {
      const double ref_pct = reference->presence_pct.at(c);
      out << pad_left(fixed(ref_pct), 9) << pad_left(fixed(pct - ref_pct), 8);
    }
    out << "\n";
  }

  out << "\n" << pad_right("combination", 24) << pad_left("turns", 7) << pad_left("share%", 9)
      << "\n";
  std::vector<std::pair<std::string, int>> combos(measured.combo_count.begin(),
                                                  measured.combo_count.end());
  std::stable_sort(combos.begin(), combos.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [label, count] : combos) {
    out << pad_right(label, 24) << pad_left(std::to_string(count), 7)
        << pad_left(fixed(measured.combo_pct.at(label)), 9) << "\n";
  }

  out << "\nh-loop share: " << fixed(measured.h_loop_share_pct) << "%";
  if (reference) {
    out << "  (ref " << fixed(reference->h_loop_share_pct) << ", delta "
        << fixed(measured.h_loop_share_pct - reference->h_loop_share_pct) << ")";
  }
  out << "\n";

  if (report) {
    out << "\ncomparison at +/-" << fixed(report->tolerance_pp, 1) << "pp\n";
    for (const auto& v : report->verdicts) {
      out << "  " << (v.pass ? "pass" : "FAIL") << "  " << pad_right(v.metric, 28)
          << "expected " << pad_left(fixed(v.expected), 7) << "  actual "
          << pad_left(fixed(v.actual), 7) << "  delta " << pad_left(fixed(v.delta), 7) << "\n";
    }
    out << (report->all_pass ? "all checks pass" : "some checks fail") << "\n";
  }
  return out.str();
}

std::string render_svg(const Distribution& measured, const ReferenceStats* reference) {
  constexpr int kWidth = 640;
  constexpr int kHeight = 360;
  constexpr int kLeft = 60;
  constexpr int kBottom = 310;
  constexpr int kTop = 40;
  const double scale = (kBottom - kTop) / 100.0;
  const int slot = (kWidth - kLeft - 20) / 5;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">"
      << "category presence, % of " << measured.total << " turns</text>\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    const double y = kBottom - pct * scale;
    out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kWidth - 20
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" << pct
        << "</text>\n";
  }
  int i = 0;
  for (char c : kPresenceOrder) {
    const double pct = measured.presence_pct.count(c) ? measured.presence_pct.at(c) : 0.0;
    const int x = kLeft + i * slot + 12;
    const int bar_w = reference ? 34 : 70;
    out << "<rect x=\"" << x << "\" y=\"" << kBottom - pct * scale << "\" width=\"" << bar_w
        << "\" height=\"" << pct * scale << "\" fill=\"#4878a8\"/>\n";
    if (reference) {
      const double ref_pct = reference->presence_pct.at(c);
      out << "<rect x=\"" << x + bar_w + 4 << "\" y=\"" << kBottom - ref_pct * scale
          << "\" width=\"" << bar_w << "\" height=\"" << ref_pct * scale
          << "\" fill=\"#b0b8c0\"/>\n";
    }
    out << "<text x=\"" << x + (reference ? 36 : 35) << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" << c
        << "</text>\n";
    ++i;
  }
  if (reference) {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kHeight - 22
        << "\" width=\"12\" height=\"12\" fill=\"#4878a8\"/>\n";
    out << "<text x=\"" << kLeft + 18 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"monospace\" font-size=\"11\">measured</text>\n";
    out << "<rect x=\"" << kLeft + 100 << "\" y=\"" << kHeight - 22
        << "\" width=\"12\" height=\"12\" fill=\"#b0b8c0\"/>\n";
    out << "<text x=\"" << kLeft + 118 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"monospace\" font-size=\"11\">reference</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace coact::analysis
