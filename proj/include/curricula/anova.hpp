#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "curricula/error.hpp"
#include "curricula/fdist.hpp"
#include "curricula/io.hpp"
#include "curricula/stats.hpp"

namespace curricula::anova {

struct Group {
  std::string label;
  std::vector<double> values;
};

/// Observations grouped by tier; needs at least two groups of two.
struct TierSamples {
  std::vector<Group> groups;

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.values.size();
    return n;
  }

  void validate() const {
    if (groups.size() < 2) throw InputError("ANOVA requires >= 2 tiers");
    for (const auto& g : groups) {
      if (g.values.size() < 2) {
        throw InputError("ANOVA requires at least 2 observations in tier '" + g.label + "'");
      }
      for (double v : g.values) {
        if (!std::isfinite(v)) throw InputError("non-finite observation in tier '" + g.label + "'");
      }
    }
  }

  static TierSamples from(const ComplexitySampleSet& set) {
    TierSamples s;
    for (const auto& t : set.tiers) s.groups.push_back({t.label, t.values});
    return s;
  }
};

struct AnovaTable {
  double tss = 0.0;
  double sst = 0.0;
  double sse = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  double mst = 0.0;
  double mse = 0.0;
  double f = 0.0;
  double grand_mean = 0.0;
  std::vector<double> group_means;  // empty when built from sums alone

  std::size_t df_total() const { return df_between + df_within; }
};

struct TestDecision {
  double alpha = 0.05;
  double f = 0.0;
  double f_critical = 0.0;
  double p_value = 1.0;
  bool reject_null = false;
};

struct AnovaResult {
  AnovaTable table;
  TestDecision decision;
};

/// Relative threshold under which a group mean is treated as equal to the
/// grand mean, so identical groups give SST = 0 exactly.
inline constexpr double kEqualMeanTolerance = 1e-12;

/// Mean squares and F from precomputed sums of squares.
inline AnovaTable table_from_sums(double sst, std::size_t df_between, double sse,
                                  std::size_t df_within) {
  if (df_between == 0 || df_within == 0) throw InputError("degrees of freedom must be positive");
  if (!(sst >= 0.0) || !(sse >= 0.0)) throw InputError("sums of squares must be non-negative");
  if (sse == 0.0) throw DegenerateError("degenerate: zero within-group variance");
  AnovaTable t;
  t.sst = sst;
  t.sse = sse;
  t.tss = sst + sse;
  t.df_between = df_between;
  t.df_within = df_within;
  t.mst = sst / static_cast<double>(df_between);
  t.mse = sse / static_cast<double>(df_within);
  t.f = t.mst / t.mse;
  return t;
}

/// One-way decomposition TSS = SST + SSE. TSS is accumulated over all
/// observations independently of the per-group sums, so the identity is a
/// real check rather than a tautology.
inline AnovaTable anova_table(const TierSamples& samples) {
  samples.validate();
  stats::RunningMoments pooled;
  std::vector<stats::RunningMoments> per_group;
  for (const auto& g : samples.groups) {
    auto& m = per_group.emplace_back();
    for (double v : g.values) {
      m.push(v);
      pooled.push(v);
    }
  }

  AnovaTable t;
  t.grand_mean = pooled.mean();
  t.tss = pooled.sum_squares();
  const double scale = std::fabs(t.grand_mean);
  for (const auto& m : per_group) {
    t.group_means.push_back(m.mean());
    double dev = m.mean() - t.grand_mean;
    if (std::fabs(dev) <= kEqualMeanTolerance * scale) dev = 0.0;
    t.sst += static_cast<double>(m.count()) * dev * dev;
    t.sse += m.sum_squares();
  }
  t.df_between = samples.groups.size() - 1;
  t.df_within = samples.total_count() - samples.groups.size();
  if (t.sse == 0.0) throw DegenerateError("degenerate: zero within-group variance");
  t.mst = t.sst / static_cast<double>(t.df_between);
  t.mse = t.sse / static_cast<double>(t.df_within);
  t.f = t.mst / t.mse;
  return t;
}

/// F-test of equal means at level alpha.
inline TestDecision decide(const AnovaTable& t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  constexpr auto kMaxDf = static_cast<std::size_t>(std::numeric_limits<int>::max());
  if (t.df_between > kMaxDf || t.df_within > kMaxDf) throw InputError("degrees of freedom too large");
  const int d1 = static_cast<int>(t.df_between);
  const int d2 = static_cast<int>(t.df_within);
  TestDecision d;
  d.alpha = alpha;
  d.f = t.f;
  d.f_critical = fdist::f_quantile(1.0 - alpha, d1, d2);
  d.p_value = fdist::f_sf(t.f, d1, d2);
  d.reject_null = t.f > d.f_critical;
  return d;
}

inline AnovaResult hypothesis_test(const TierSamples& samples, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  auto table = anova_table(samples);
  auto decision = decide(table, alpha);
  return {std::move(table), decision};
}

}  // namespace curricula::anova
