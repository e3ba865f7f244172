#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "curricula/error.hpp"
#include "curricula/stats.hpp"

using namespace curricula;
using namespace curricula::stats;

namespace {

std::vector<double> one_to(int n) {
  std::vector<double> v(n);
  std::iota(v.begin(), v.end(), 1.0);
  return v;
}

// Quantile by the textbook rank formula, independent of quantile_sorted.
double rank_quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * p;
  const double f = std::floor(h);
  const auto i = static_cast<std::size_t>(f);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (h - f) * (v[i + 1] - v[i]);
}

}  // namespace

TEST(Stats, NineValues) {
  auto s = summarize_sample(one_to(9));
  EXPECT_EQ(s.n, 9u);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.median, 5.0);
  EXPECT_DOUBLE_EQ(s.q1, 3.0);
  EXPECT_DOUBLE_EQ(s.q3, 7.0);
  EXPECT_NEAR(s.notch_low, 5.0 - 1.57 * 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.notch_high, 5.0 + 1.57 * 4.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.whisker_low, 1.0);
  EXPECT_DOUBLE_EQ(s.whisker_high, 9.0);
  EXPECT_TRUE(s.outliers.empty());
  EXPECT_NEAR(s.stddev, std::sqrt(7.5), 1e-12);
}

TEST(Stats, OutliersBeyondFences) {
  std::vector<double> v = one_to(9);
  v.push_back(100.0);
  v.push_back(-50.0);
  auto s = summarize_sample(v);
  EXPECT_EQ(s.outliers, (std::vector<double>{-50.0, 100.0}));
  EXPECT_DOUBLE_EQ(s.whisker_low, 1.0);
  EXPECT_DOUBLE_EQ(s.whisker_high, 9.0);
}

TEST(Stats, SingleValueAndEmpty) {
  auto s = summarize_sample(std::vector<double>{4.0});
  EXPECT_DOUBLE_EQ(s.median, 4.0);
  EXPECT_DOUBLE_EQ(s.notch_low, 4.0);
  EXPECT_DOUBLE_EQ(s.stddev, 0.0);
  EXPECT_THROW(summarize_sample(std::vector<double>{}), InputError);
}

TEST(Stats, QuantilesMatchRankFormula) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> dist(100.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 37);
    for (auto& x : v) x = dist(rng);
    auto s = summarize_sample(v);
    EXPECT_NEAR(s.q1, rank_quantile(v, 0.25), 1e-9);
    EXPECT_NEAR(s.median, rank_quantile(v, 0.5), 1e-9);
    EXPECT_NEAR(s.q3, rank_quantile(v, 0.75), 1e-9);
  }
}

TEST(Stats, PermutationAndAffineInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 300.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + trial % 30);
    for (auto& x : v) x = dist(rng);
    const auto base = summarize_sample(v);
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto perm = summarize_sample(shuffled);
    EXPECT_DOUBLE_EQ(perm.median, base.median);
    EXPECT_DOUBLE_EQ(perm.q1, base.q1);
    EXPECT_DOUBLE_EQ(perm.q3, base.q3);
    EXPECT_EQ(perm.outliers, base.outliers);
    EXPECT_NEAR(perm.mean, base.mean, 1e-9);

    const double a = 2.5;
    const double b = 17.0;
    auto moved = v;
    for (auto& x : moved) x = a * x + b;
    const auto aff = summarize_sample(moved);
    EXPECT_NEAR(aff.median, a * base.median + b, 1e-9);
    EXPECT_NEAR(aff.q1, a * base.q1 + b, 1e-9);
    EXPECT_NEAR(aff.q3, a * base.q3 + b, 1e-9);
    EXPECT_NEAR(aff.notch_low, a * base.notch_low + b, 1e-9);
    EXPECT_NEAR(aff.notch_high, a * base.notch_high + b, 1e-9);
    EXPECT_NEAR(aff.stddev, a * base.stddev, 1e-9);
    EXPECT_EQ(aff.outliers.size(), base.outliers.size());
  }
}

TEST(Stats, RunningMomentsAreStable) {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(1e9 + (i % 2 ? 1.0 : -1.0));
  auto m = moments(v);
  EXPECT_NEAR(m.mean(), 1e9, 1e-6);
  EXPECT_NEAR(m.variance(), 1000.0 / 999.0, 1e-6);
}

TEST(Stats, SampleSize) {
  auto s = sample_size(60.0, 1.96, 30.0);
  EXPECT_NEAR(s.unrounded, 15.3664, 1e-9);
  EXPECT_EQ(s.n, 16u);
  EXPECT_EQ(sample_size(30.0, 1.0, 30.0).n, 2u);
  EXPECT_EQ(sample_size(90.0, 1.0, 30.0).n, 9u);
  EXPECT_EQ(sample_size(1.0, 1.0, 1000.0).n, 2u);
  EXPECT_THROW(sample_size(0.0, 1.96, 30.0), InputError);
  EXPECT_THROW(sample_size(60.0, -1.0, 30.0), InputError);
  EXPECT_THROW(sample_size(60.0, 1.96, 0.0), InputError);
  EXPECT_THROW(sample_size(std::nan(""), 1.96, 30.0), InputError);
}

TEST(Stats, SampleSizeIsCeilingOfFormula) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(0.1, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double sigma = dist(rng);
    const double z = dist(rng) / 20.0;
    const double e = dist(rng);
    const auto s = sample_size(sigma, z, e);
    const double exact = std::pow(sigma * z / e, 2.0);
    EXPECT_GE(double(s.n), std::max(2.0, exact * (1 - 1e-9)));
    EXPECT_LT(double(s.n), std::max(2.0, exact) + 1.0);
  }
}

TEST(Stats, HistogramExplicitEdges) {
  const std::vector<double> v{0.0, 1.0, 1.5, 2.0, 3.0};
  const std::vector<double> edges{0.0, 1.0, 2.0, 3.0};
  auto h = histogram(v, edges);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 2, 2}));
  EXPECT_THROW(histogram(v, std::vector<double>{0.0, 2.0}), InputError);
  EXPECT_THROW(histogram(v, std::vector<double>{0.0, 5.0, 4.0}), InputError);
  EXPECT_THROW(histogram(v, std::vector<double>{0.0}), InputError);
}

TEST(Stats, HistogramDefaultBinsCoverEverything) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> dist(150.0, 60.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial);
    for (auto& x : v) x = std::fabs(dist(rng));
    auto h = histogram(v);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), v.size());
    EXPECT_EQ(h.bin_edges.size(), h.counts.size() + 1);
    EXPECT_LE(h.bin_edges.front(), *std::min_element(v.begin(), v.end()));
    EXPECT_GE(h.bin_edges.back(), *std::max_element(v.begin(), v.end()));
    const double width = default_bin_width(v);
    EXPECT_GE(width, 1.0);
    for (std::size_t i = 1; i < h.bin_edges.size(); ++i) {
      EXPECT_NEAR(h.bin_edges[i] - h.bin_edges[i - 1], width, 1e-9 * (1 + width));
    }
  }
}

TEST(Stats, FreedmanDiaconisWidth) {
  auto v = one_to(8);
  // IQR of 1..8 is 6.25 - 2.75 = 3.5, n^(1/3) = 2.
  EXPECT_NEAR(default_bin_width(v), 3.5, 1e-12);
  EXPECT_DOUBLE_EQ(default_bin_width(std::vector<double>{5, 5, 5}), 1.0);
  auto h = histogram(std::vector<double>{5, 5, 5});
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{3}));
  EXPECT_THROW(histogram_with_width(v, 0.0), InputError);
  EXPECT_THROW(histogram_with_width(v, 1e-9), InputError);
}
