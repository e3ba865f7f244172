#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curricula/anova.hpp"
#include "curricula/csv.hpp"
#include "curricula/io.hpp"
#include "curricula/report.hpp"
#include "curricula/stats.hpp"
#include "curricula/svg.hpp"
#include "curricula/synthgen.hpp"

namespace curricula::study {

/// Tier moments of the reference computer-science study: top, middle and
/// bottom ranking tiers, 20 curricula each.
inline std::vector<synth::TierTarget> paper_targets() {
  return {{"top", 96.7, 21.6, 20}, {"middle", 140.4, 67.3, 20}, {"bottom", 168.2, 89.1, 20}};
}

inline constexpr std::array<std::string_view, 4> kTargetColumns = {"label", "mean", "std", "count"};

/// Targets CSV: `label,mean,std,count`, one tier per row.
inline std::vector<synth::TierTarget> parse_targets(std::string_view text) {
  const auto records = csv::read(text);
  curricula::detail::check_header(records, kTargetColumns);
  std::vector<synth::TierTarget> targets;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != kTargetColumns.size()) {
      throw ParseError(rec.line, "", "expected 4 fields, found " + std::to_string(rec.fields.size()));
    }
    synth::TierTarget t;
    t.label = std::string(csv::trim(rec.fields[0]));
    auto mean = csv::parse_double(rec.fields[1]);
    auto sd = csv::parse_double(rec.fields[2]);
    auto count = csv::parse_size(rec.fields[3]);
    if (!mean) throw ParseError(rec.line, "mean", "not a number");
    if (!sd) throw ParseError(rec.line, "std", "not a number");
    if (!count) throw ParseError(rec.line, "count", "not a non-negative integer");
    t.target_mean = *mean;
    t.target_std = *sd;
    t.count = *count;
    try {
      t.validate();
    } catch (const InputError& e) {
      throw ParseError(rec.line, "", e.what());
    }
    targets.push_back(std::move(t));
  }
  if (targets.empty()) throw ParseError(records.front().line + 1, "", "no tier targets");
  return targets;
}

struct SampleSizeInputs {
  std::optional<double> sigma;  // defaults to the pooled within-tier std, sqrt(MSE)
  double z = 1.96;
  double e = 30.0;
};

struct TierReport {
  std::string label;
  stats::SampleSummary summary;
  stats::Histogram histogram;
};

struct SampleSizeCalc {
  double sigma = 0.0;
  double z = 0.0;
  double e = 0.0;
  stats::SampleSize result;
};

struct StudyReport {
  std::vector<TierReport> per_tier;
  stats::SampleSummary pooled_summary;
  stats::Histogram pooled_histogram;
  anova::AnovaTable anova;
  anova::TestDecision decision;
  SampleSizeCalc sample_size_calc;
};

/// Summaries, histograms, ANOVA and the sample-size calculation for a
/// tiered sample set.
inline StudyReport analyse(const ComplexitySampleSet& samples, double alpha,
                           const SampleSizeInputs& size_inputs = {}) {
  StudyReport r;
  for (const auto& tier : samples.tiers) {
    r.per_tier.push_back({tier.label, stats::summarize_sample(tier.values), stats::histogram(tier.values)});
  }
  const auto pooled = samples.pooled();
  r.pooled_summary = stats::summarize_sample(pooled);
  r.pooled_histogram = stats::histogram(pooled);
  auto result = anova::hypothesis_test(anova::TierSamples::from(samples), alpha);
  r.anova = std::move(result.table);
  r.decision = result.decision;
  r.sample_size_calc.sigma = size_inputs.sigma.value_or(std::sqrt(r.anova.mse));
  r.sample_size_calc.z = size_inputs.z;
  r.sample_size_calc.e = size_inputs.e;
  r.sample_size_calc.result = stats::sample_size(r.sample_size_calc.sigma, size_inputs.z, size_inputs.e);
  return r;
}

inline report::Json boxplot_json(const std::vector<TierReport>& tiers) {
  report::Json arr = report::Json::array();
  for (const auto& t : tiers) arr.push_back(report::boxplot_entry(t.label, t.summary));
  return arr;
}

inline std::string boxplot_svg(const std::vector<TierReport>& tiers) {
  std::vector<svg::LabeledSummary> items;
  for (const auto& t : tiers) items.push_back({t.label, t.summary});
  return svg::render_boxplot(items);
}

inline report::Json to_json(const StudyReport& r) {
  using report::to_json;
  report::Json tiers = report::Json::array();
  for (const auto& t : r.per_tier) {
    tiers.push_back({{"label", t.label}, {"summary", to_json(t.summary)}, {"histogram", to_json(t.histogram)}});
  }
  const auto& ss = r.sample_size_calc;
  return {{"per_tier", std::move(tiers)},
          {"pooled", {{"summary", to_json(r.pooled_summary)}, {"histogram", to_json(r.pooled_histogram)}}},
          {"anova", to_json(r.anova)},
          {"decision", to_json(r.decision)},
          {"sample_size_calc", to_json(ss.result, ss.sigma, ss.z, ss.e)}};
}

inline std::string file_label(std::string_view label) {
  std::string out;
  for (char ch : label) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '_';
    out.push_back(ok ? ch : '_');
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
  if (!f) throw InputError("failed writing " + path.string());
}

/// Writes the full study into `dir`: samples.csv, curricula/*.csv,
/// report.json, boxplot.json, boxplot.svg, anova.txt and targets.json.
inline void write_study(const std::filesystem::path& dir, const synth::TierStudy& study,
                        const StudyReport& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "curricula", ec);
  if (ec) throw InputError("cannot create " + (dir / "curricula").string() + ": " + ec.message());
  write_text(dir / "samples.csv", serialize_samples(study.samples));
  report::Json targets = report::Json::array();
  for (std::size_t t = 0; t < study.tiers.size(); ++t) {
    const auto& tier = study.tiers[t];
    report::Json generated = report::Json::array();
    for (std::size_t j = 0; j < tier.curricula.size(); ++j) {
      const auto& g = tier.curricula[j];
      char index[16];
      std::snprintf(index, sizeof index, "%02zu", j + 1);
      const auto name = std::to_string(t + 1) + "-" + file_label(tier.target.label) + "-" + index + ".csv";
      write_text(dir / "curricula" / name, serialize_curriculum(g.plan));
      generated.push_back({{"file", "curricula/" + name},
                           {"seed", std::to_string(g.config.seed)},
                           {"edge_probability", report::number(g.config.edge_probability)},
                           {"complexity", report::number(g.complexity)}});
    }
    targets.push_back({{"label", tier.target.label},
                       {"target_mean", report::number(tier.target.target_mean)},
                       {"target_std", report::number(tier.target.target_std)},
                       {"count", tier.target.count},
                       {"achieved_mean", report::number(tier.achieved_mean)},
                       {"achieved_std", report::number(tier.achieved_std)},
                       {"attained", tier.attained},
                       {"curricula", std::move(generated)}});
  }
  write_text(dir / "targets.json", report::dump(targets));
  write_text(dir / "report.json", report::dump(to_json(r)));
  write_text(dir / "boxplot.json", report::dump(boxplot_json(r.per_tier)));
  write_text(dir / "boxplot.svg", boxplot_svg(r.per_tier));
  write_text(dir / "anova.txt", report::anova_table_text(r.anova, r.decision));
}

}  // namespace curricula::study
