#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "curricula/anova.hpp"
#include "curricula/metrics.hpp"
#include "curricula/stats.hpp"
#include "json.hpp"

namespace curricula::report {

using Json = nlohmann::json;  // std::map-backed objects: keys come out sorted

/// Rounds to 12 significant digits so emitted documents are canonical.
inline double canonical_number(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  double out = v;
  std::from_chars(buf, ptr, out);
  return out == 0.0 ? 0.0 : out;
}

inline Json number(double v) { return canonical_number(v); }

inline Json numbers(const std::vector<double>& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(number(v));
  return arr;
}

inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

/// Fixed-point text, independent of the C locale.
inline std::string fixed(double v, int digits) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (ec != std::errc()) return "nan";
  std::string s(buf, ptr);
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string general(double v, int digits) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

inline Json to_json(const CurriculumMetrics& m) {
  Json doc;
  Json courses = Json::array();
  for (const auto& [id, cm] : m.per_course) {
    courses.push_back({{"id", id},
                       {"blocking", cm.blocking},
                       {"delay", cm.delay},
                       {"complexity", number(cm.complexity)}});
  }
  doc["courses"] = std::move(courses);
  if (m.per_term) doc["per_term"] = numbers(*m.per_term);
  doc["total"] = number(m.total);
  return doc;
}

inline Json to_json(const stats::SampleSummary& s) {
  return {{"n", s.n},
          {"mean", number(s.mean)},
          {"std", number(s.stddev)},
          {"median", number(s.median)},
          {"q1", number(s.q1)},
          {"q3", number(s.q3)},
          {"iqr", number(s.iqr)},
          {"notch_low", number(s.notch_low)},
          {"notch_high", number(s.notch_high)},
          {"whisker_low", number(s.whisker_low)},
          {"whisker_high", number(s.whisker_high)},
          {"outliers", numbers(s.outliers)}};
}

/// The box-plot subset of a summary, as emitted by the boxplot command.
inline Json boxplot_entry(const std::string& label, const stats::SampleSummary& s) {
  return {{"label", label},
          {"median", number(s.median)},
          {"q1", number(s.q1)},
          {"q3", number(s.q3)},
          {"notch_low", number(s.notch_low)},
          {"notch_high", number(s.notch_high)},
          {"whisker_low", number(s.whisker_low)},
          {"whisker_high", number(s.whisker_high)},
          {"outliers", numbers(s.outliers)}};
}

inline Json to_json(const stats::Histogram& h) {
  return {{"bin_edges", numbers(h.bin_edges)}, {"counts", h.counts}};
}

inline Json to_json(const stats::SampleSize& s, double sigma, double z, double e) {
  return {{"sigma", number(sigma)},
          {"z", number(z)},
          {"e", number(e)},
          {"unrounded", number(s.unrounded)},
          {"n", s.n}};
}

inline Json to_json(const anova::AnovaTable& t) {
  Json doc = {{"tss", number(t.tss)},
              {"sst", number(t.sst)},
              {"sse", number(t.sse)},
              {"df_between", t.df_between},
              {"df_within", t.df_within},
              {"df_total", t.df_total()},
              {"mst", number(t.mst)},
              {"mse", number(t.mse)},
              {"f", number(t.f)},
              {"grand_mean", number(t.grand_mean)},
              {"group_means", numbers(t.group_means)}};
  return doc;
}

inline std::string decision_word(const anova::TestDecision& d) {
  return d.reject_null ? "reject" : "fail to reject";
}

inline Json to_json(const anova::TestDecision& d) {
  return {{"alpha", number(d.alpha)},
          {"f", number(d.f)},
          {"f_critical", number(d.f_critical)},
          {"p_value", number(d.p_value)},
          {"reject_null", d.reject_null},
          {"decision", decision_word(d)}};
}

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

/// Aligned per-course table; totals to one decimal place.
inline std::string metrics_table(const CurriculumMetrics& m) {
  using detail::pad_left;
  using detail::pad_right;
  std::size_t id_width = 6;
  for (const auto& [id, cm] : m.per_course) id_width = std::max(id_width, id.size());
  std::string out = pad_right("Course", id_width) + "  Blocking  Delay  Complexity\n";
  for (const auto& [id, cm] : m.per_course) {
    out += pad_right(id, id_width) + "  " + pad_left(std::to_string(cm.blocking), 8) + "  " +
           pad_left(std::to_string(cm.delay), 5) + "  " + pad_left(fixed(cm.complexity, 1), 10) +
           "\n";
  }
  if (m.per_term) {
    for (std::size_t i = 0; i < m.per_term->size(); ++i) {
      out += "Term " + std::to_string(i + 1) + ": " + fixed((*m.per_term)[i], 1) + "\n";
    }
  }
  out += "Total: " + fixed(m.total, 1) + "\n";
  return out;
}

/// Sum of Squares / Deg. of Freedom / Mean Square / F layout, followed by the
/// decision line.
inline std::string anova_table_text(const anova::AnovaTable& t, const anova::TestDecision& d) {
  using detail::pad_left;
  using detail::pad_right;
  auto row = [](const std::string& source, const std::string& ss, const std::string& df,
                const std::string& ms, const std::string& f) {
    return pad_right(source, 6) + "  " + pad_left(ss, 14) + "  " + pad_left(df, 15) + "  " +
           pad_left(ms, 11) + "  " + pad_left(f, 8) + "\n";
  };
  std::string out = row("Source", "Sum of Squares", "Deg. of Freedom", "Mean Square", "F");
  out += row("Tiers", fixed(t.sst, 1), std::to_string(t.df_between), fixed(t.mst, 1), fixed(t.f, 2));
  out += row("Error", fixed(t.sse, 1), std::to_string(t.df_within), fixed(t.mse, 1), "");
  out += row("Total", fixed(t.tss, 1), std::to_string(t.df_total()), "", "");
  out += "decision: " + decision_word(d) + " (alpha = " + fixed(d.alpha, 3) +
         ", F = " + fixed(d.f, 2) + ", F_crit = " + fixed(d.f_critical, 2) + ", p = " + general(d.p_value, 4) + ")\n";
  return out;
}

}  // namespace curricula::report
