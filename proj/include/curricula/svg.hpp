#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "curricula/report.hpp"
#include "curricula/stats.hpp"

namespace curricula::svg {

struct LabeledSummary {
  std::string label;
  stats::SampleSummary summary;
};

inline constexpr double kWidth = 640.0;
inline constexpr double kHeight = 400.0;
inline constexpr double kMargin = 40.0;

/// Notched box-and-whisker plot on a fixed canvas, one box per tier in input
/// order. Output depends only on the summaries, so identical input gives
/// identical bytes.
inline std::string render_boxplot(const std::vector<LabeledSummary>& tiers) {
  using report::fixed;
  double lo = 0.0;
  double hi = 1.0;
  bool first = true;
  auto extend = [&](double v) {
    if (first) {
      lo = hi = v;
      first = false;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto& t : tiers) {
    const auto& s = t.summary;
    for (double v : {s.whisker_low, s.whisker_high, s.notch_low, s.notch_high, s.q1, s.q3}) extend(v);
    for (double v : s.outliers) extend(v);
  }
  if (hi - lo <= 0.0) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double plot_h = kHeight - 2 * kMargin;
  auto y = [&](double v) { return fixed(kMargin + (hi - v) / (hi - lo) * plot_h, 2); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kHeight, 0) +
         "\" fill=\"white\"/>\n";
  auto line = [&](double x1, const std::string& y1, double x2, const std::string& y2) {
    out += "<line x1=\"" + fixed(x1, 2) + "\" y1=\"" + y1 + "\" x2=\"" + fixed(x2, 2) + "\" y2=\"" +
           y2 + "\" stroke=\"black\"/>\n";
  };
  // Value axis with tick labels at the ends.
  line(kMargin, fixed(kMargin, 2), kMargin, fixed(kHeight - kMargin, 2));
  out += "<text x=\"2\" y=\"" + y(hi) + "\">" + fixed(hi, 1) + "</text>\n";
  out += "<text x=\"2\" y=\"" + y(lo) + "\">" + fixed(lo, 1) + "</text>\n";

  const double slot = (kWidth - 2 * kMargin) / static_cast<double>(std::max<std::size_t>(1, tiers.size()));
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    const auto& s = tiers[i].summary;
    const double cx = kMargin + slot * (static_cast<double>(i) + 0.5);
    const double half = slot * 0.25;
    const double left = cx - half;
    const double right = cx + half;
    const double inset = half * 0.5;
    // Notched outline: q3 edge, notch down to the median and back out to q1.
    const std::vector<std::pair<double, double>> outline = {
        {left, s.q3},          {right, s.q3},   {right, s.notch_high}, {right - inset, s.median},
        {right, s.notch_low},  {right, s.q1},   {left, s.q1},          {left, s.notch_low},
        {left + inset, s.median}, {left, s.notch_high}};
    for (std::size_t k = 0; k < outline.size(); ++k) {
      const auto& a = outline[k];
      const auto& b = outline[(k + 1) % outline.size()];
      line(a.first, y(a.second), b.first, y(b.second));
    }
    line(left + inset, y(s.median), right - inset, y(s.median));
    line(cx, y(s.q3), cx, y(s.whisker_high));
    line(cx, y(s.q1), cx, y(s.whisker_low));
    line(cx - inset, y(s.whisker_high), cx + inset, y(s.whisker_high));
    line(cx - inset, y(s.whisker_low), cx + inset, y(s.whisker_low));
    for (double v : s.outliers) {
      out += "<circle cx=\"" + fixed(cx, 2) + "\" cy=\"" + y(v) + "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    }
    std::string label;
    for (char ch : tiers[i].label) {
      switch (ch) {
        case '<': label += "&lt;"; break;
        case '>': label += "&gt;"; break;
        case '&': label += "&amp;"; break;
        case '"': label += "&quot;"; break;
        default: label.push_back(ch);
      }
    }
    out += "<text x=\"" + fixed(left, 2) + "\" y=\"" + fixed(kHeight - kMargin / 3, 2) + "\">" +
           label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace curricula::svg
