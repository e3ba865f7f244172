#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "curricula/error.hpp"

namespace curricula::stats {

/// Width multiplier of the median notch: m +/- 1.57 * IQR / sqrt(n).
inline constexpr double kNotchFactor = 1.57;
/// Tukey fence multiplier applied to the IQR.
inline constexpr double kFenceFactor = 1.5;

/// Single-pass mean and sum of squared deviations.
class RunningMoments {
 public:
  void push(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Sum of squared deviations from the mean.
  double sum_squares() const noexcept { return m2_; }
  /// Sample variance with n-1 denominator; 0 for n < 2.
  double variance() const noexcept { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }
  double stddev() const noexcept { return std::sqrt(variance()); }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline RunningMoments moments(std::span<const double> values) {
  RunningMoments m;
  for (double v : values) m.push(v);
  return m;
}

/// Linear interpolation between order statistics at position p*(n-1)
/// (0-indexed). `sorted` must be ascending and non-empty.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("quantile probability must lie in [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline Interval notch_interval(double median, double iqr, std::size_t n) {
  if (n == 0) throw InputError("notch interval needs at least one observation");
  if (!(iqr >= 0.0)) throw InputError("interquartile range must be non-negative");
  const double half = kNotchFactor * iqr / std::sqrt(static_cast<double>(n));
  return {median - half, median + half};
}

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // n-1 denominator
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double notch_low = 0.0;
  double notch_high = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

inline SampleSummary summarize_sample(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot summarize an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::ranges::sort(sorted);

  SampleSummary s;
  s.n = sorted.size();
  const auto m = moments(sorted);
  s.mean = m.mean();
  s.stddev = m.stddev();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  const auto notch = notch_interval(s.median, s.iqr, s.n);
  s.notch_low = notch.low;
  s.notch_high = notch.high;

  const double lower_fence = s.q1 - kFenceFactor * s.iqr;
  const double upper_fence = s.q3 + kFenceFactor * s.iqr;
  bool have_inlier = false;
  for (double v : sorted) {
    if (v < lower_fence || v > upper_fence) {
      s.outliers.push_back(v);
      continue;
    }
    if (!have_inlier) s.whisker_low = v;
    s.whisker_high = v;
    have_inlier = true;
  }
  return s;
}

struct SampleSize {
  double unrounded = 0.0;
  std::size_t n = 0;
};

/// Per-group sample size (sigma * z / e)^2, rounded up and floored at 2.
inline SampleSize sample_size(double sigma, double z, double e) {
  if (!(sigma > 0.0) || !(z > 0.0) || !(e > 0.0) || !std::isfinite(sigma) || !std::isfinite(z) ||
      !std::isfinite(e)) {
    throw InputError("sigma, z and e must be positive and finite");
  }
  const double ratio = sigma * z / e;
  SampleSize out;
  out.unrounded = ratio * ratio;
  if (out.unrounded > 1e15) throw InputError("sample size is too large to represent");
  // Absorb representation error so that exact squares are not bumped up.
  const double rounded = std::ceil(out.unrounded * (1.0 - 1e-12));
  out.n = std::max<std::size_t>(2, static_cast<std::size_t>(rounded));
  return out;
}

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
};

/// Counts against explicit edges. Bins are [e_i, e_{i+1}) with the last bin
/// closed; every value must fall inside [e_0, e_last].
inline Histogram histogram(std::span<const double> values, std::span<const double> edges) {
  if (values.empty()) throw InputError("cannot build a histogram of an empty sample");
  if (edges.size() < 2) throw InputError("histogram needs at least two bin edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw InputError("bin edges must be finite");
    if (i && !(edges[i] > edges[i - 1])) throw InputError("bin edges must be strictly ascending");
  }
  Histogram h{{edges.begin(), edges.end()}, std::vector<std::size_t>(edges.size() - 1, 0)};
  for (double v : values) {
    if (!(v >= edges.front() && v <= edges.back())) {
      throw InputError("value outside the histogram range");
    }
    auto it = std::ranges::upper_bound(edges, v);
    auto bin = static_cast<std::size_t>(it - edges.begin());
    bin = std::min(bin, edges.size() - 1) - 1;
    ++h.counts[bin];
  }
  return h;
}

/// Equal-width bins of `width` starting at the sample minimum.
inline Histogram histogram_with_width(std::span<const double> values, double width) {
  if (values.empty()) throw InputError("cannot build a histogram of an empty sample");
  if (!(width > 0.0) || !std::isfinite(width)) throw InputError("bin width must be positive");
  const auto [lo, hi] = std::ranges::minmax(values);
  const double span = std::max(1.0, std::ceil((hi - lo) / width));
  if (!(span <= 100000.0)) throw InputError("bin width too small for the sample range");
  auto bins = static_cast<std::size_t>(span);
  while (lo + static_cast<double>(bins) * width < hi) ++bins;
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
  return histogram(values, edges);
}

/// Freedman-Diaconis width 2 * IQR * n^(-1/3), never narrower than 1 point.
inline double default_bin_width(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::ranges::sort(sorted);
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double fd = 2.0 * iqr * std::pow(static_cast<double>(sorted.size()), -1.0 / 3.0);
  return std::max(1.0, fd);
}

inline Histogram histogram(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot build a histogram of an empty sample");
  return histogram_with_width(values, default_bin_width(values));
}

}  // namespace curricula::stats
