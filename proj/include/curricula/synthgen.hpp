#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curricula/error.hpp"
#include "curricula/io.hpp"
#include "curricula/metrics.hpp"
#include "curricula/model.hpp"
#include "curricula/random.hpp"
#include "curricula/stats.hpp"

namespace curricula::synth {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t num_terms = 8;
  std::size_t min_courses_per_term = 4;
  std::size_t max_courses_per_term = 6;
  /// Chance that a course draws a prerequisite from each earlier term.
  double edge_probability = 0.3;
  std::size_t max_prereqs_per_course = 3;
  double corequisite_probability = 0.05;

  void validate() const {
    if (num_terms < 1) throw InputError("num_terms must be at least 1");
    if (min_courses_per_term < 1 || max_courses_per_term < min_courses_per_term) {
      throw InputError("courses-per-term range must be non-empty and start at 1 or more");
    }
    if (num_terms * max_courses_per_term > 100000) throw InputError("curriculum too large");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
      throw InputError("edge_probability must lie in [0, 1]");
    }
    if (!(corequisite_probability >= 0.0 && corequisite_probability <= 1.0)) {
      throw InputError("corequisite_probability must lie in [0, 1]");
    }
  }
};

namespace detail {

// Everything the seed fixes, independent of the two probabilities. Courses
// are numbered in term order, so index order is a topological order of every
// curriculum built from the layout.
struct Layout {
  struct Candidate {
    std::size_t source;
    double draw;
  };
  struct CoreqDraw {
    std::size_t partner;  // == course index when no partner exists
    double draw;
  };

  std::vector<std::size_t> term_of;  // 1-based
  std::vector<std::size_t> term_sizes;
  std::vector<std::vector<Candidate>> candidates;  // per course, one per earlier term
  std::vector<CoreqDraw> coreq;
  std::size_t id_width = 3;

  std::size_t size() const { return term_of.size(); }
};

inline Layout make_layout(const GeneratorConfig& config) {
  config.validate();
  SplitMix64 rng(config.seed);
  Layout layout;
  std::vector<std::size_t> term_start;
  for (std::size_t t = 0; t < config.num_terms; ++t) {
    const auto count = rng.uniform_int(config.min_courses_per_term, config.max_courses_per_term);
    term_start.push_back(layout.size());
    layout.term_sizes.push_back(count);
    for (std::size_t i = 0; i < count; ++i) layout.term_of.push_back(t + 1);
  }
  layout.id_width = std::max<std::size_t>(3, std::to_string(layout.size()).size());
  layout.candidates.resize(layout.size());
  layout.coreq.resize(layout.size());
  for (std::size_t c = 0; c < layout.size(); ++c) {
    const auto term = layout.term_of[c] - 1;
    for (std::size_t s = 0; s < term; ++s) {
      const double draw = rng.uniform01();
      const auto pick = rng.uniform_int(0, layout.term_sizes[s] - 1);
      layout.candidates[c].push_back({term_start[s] + pick, draw});
    }
    const double draw = rng.uniform01();
    const auto size = layout.term_sizes[term];
    std::size_t partner = c;
    if (size >= 2) {
      auto k = rng.uniform_int(0, size - 2);
      const auto self = c - term_start[term];
      if (k >= self) ++k;
      partner = term_start[term] + k;
    } else {
      rng.next();
    }
    layout.coreq[c] = {partner, draw};
  }
  return layout;
}

struct IndexEdge {
  std::size_t source;
  std::size_t target;
  RequisiteKind kind;
  double threshold;  // prerequisite present iff threshold < edge_probability

  friend auto operator<=>(const IndexEdge& a, const IndexEdge& b) {
    return std::tie(a.source, a.target) <=> std::tie(b.source, b.target);
  }
  friend bool operator==(const IndexEdge& a, const IndexEdge& b) {
    return a.source == b.source && a.target == b.target;
  }
};

// Prerequisites that can ever appear: for each course the `max_prereqs`
// candidates with the smallest draws. For a given probability the selected
// set is those with draw < p, which only grows with p.
inline std::vector<IndexEdge> eligible_prerequisites(const Layout& layout,
                                                     const GeneratorConfig& config) {
  std::vector<IndexEdge> edges;
  for (std::size_t c = 0; c < layout.size(); ++c) {
    auto cands = layout.candidates[c];
    std::ranges::stable_sort(cands, {}, &Layout::Candidate::draw);
    const auto keep = std::min(cands.size(), config.max_prereqs_per_course);
    for (std::size_t i = 0; i < keep; ++i) {
      edges.push_back({cands[i].source, c, RequisiteKind::prerequisite, cands[i].draw});
    }
  }
  return edges;
}

inline std::vector<IndexEdge> corequisites(const Layout& layout, const GeneratorConfig& config) {
  std::vector<IndexEdge> edges;
  for (std::size_t c = 0; c < layout.size(); ++c) {
    const auto& d = layout.coreq[c];
    if (d.partner == c || !(d.draw < config.corequisite_probability)) continue;
    edges.push_back({std::min(c, d.partner), std::max(c, d.partner), RequisiteKind::corequisite, 0.0});
  }
  std::ranges::sort(edges);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline std::string course_id(const Layout& layout, std::size_t index) {
  std::string digits = std::to_string(index + 1);
  return "C" + std::string(layout.id_width - digits.size(), '0') + digits;
}

// Total complexity under unit weights for a graph whose index order is
// topological. Edges are given as (source < target) pairs.
class FastEvaluator {
 public:
  explicit FastEvaluator(std::size_t n) : n_(n), words_((n + 63) / 64) {}

  double total(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    succ_.assign(n_, {});
    for (auto [s, t] : edges) succ_[s].push_back(t);
    ending_.assign(n_, 1);
    starting_.assign(n_, 1);
    for (std::size_t v = 0; v < n_; ++v) {
      for (auto w : succ_[v]) ending_[w] = std::max(ending_[w], ending_[v] + 1);
    }
    reach_.assign(n_ * words_, 0);
    double sum = 0.0;
    for (std::size_t v = n_; v-- > 0;) {
      auto* row = reach_.data() + v * words_;
      for (auto w : succ_[v]) {
        starting_[v] = std::max(starting_[v], starting_[w] + 1);
        row[w / 64] |= std::uint64_t{1} << (w % 64);
        const auto* other = reach_.data() + w * words_;
        for (std::size_t k = 0; k < words_; ++k) row[k] |= other[k];
      }
      std::size_t blocked = 0;
      for (std::size_t k = 0; k < words_; ++k) blocked += std::popcount(row[k]);
      sum += static_cast<double>(blocked + ending_[v] + starting_[v] - 1);
    }
    return sum;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::size_t> ending_;
  std::vector<std::size_t> starting_;
  std::vector<std::uint64_t> reach_;
};

}  // namespace detail

/// Term-stratified random curriculum. Prerequisites always come from strictly
/// earlier terms and corequisites from the same term, oriented from the lower
/// to the higher id, so the result is acyclic and the plan valid.
inline DegreePlan generate_curriculum(const GeneratorConfig& config) {
  const auto layout = detail::make_layout(config);
  DegreePlan plan;
  auto& cur = plan.curriculum;
  cur.name = "synthetic-" + std::to_string(config.seed);
  cur.institution = "synthetic";
  plan.terms.resize(config.num_terms);
  for (std::size_t t = 0; t < config.num_terms; ++t) plan.terms[t].index = t + 1;
  for (std::size_t c = 0; c < layout.size(); ++c) {
    Course course;
    course.id = detail::course_id(layout, c);
    course.name = "Course " + std::to_string(c + 1);
    course.credit_hours = 3.0;
    course.prefix = "SYN";
    course.number = std::to_string(layout.term_of[c] * 100 + c + 1);
    plan.terms[layout.term_of[c] - 1].course_ids.push_back(course.id);
    cur.courses.push_back(std::move(course));
  }
  auto edges = detail::corequisites(layout, config);
  for (const auto& e : detail::eligible_prerequisites(layout, config)) {
    if (e.threshold < config.edge_probability) edges.push_back(e);
  }
  std::ranges::sort(edges);
  for (const auto& e : edges) {
    cur.edges.push_back({detail::course_id(layout, e.source), detail::course_id(layout, e.target), e.kind});
  }
  return plan;
}

/// Complexity reachable at each edge probability for one fixed layout: a
/// nondecreasing step function of the probability.
class ComplexityProfile {
 public:
  explicit ComplexityProfile(const GeneratorConfig& base) : config_(base) {
    const auto layout = detail::make_layout(base);
    auto prereqs = detail::eligible_prerequisites(layout, base);
    std::ranges::sort(prereqs, {}, &detail::IndexEdge::threshold);
    std::vector<std::pair<std::size_t, std::size_t>> active;
    for (const auto& e : detail::corequisites(layout, base)) active.emplace_back(e.source, e.target);
    detail::FastEvaluator eval(layout.size());
    course_count_ = layout.size();
    thresholds_.push_back(0.0);
    totals_.push_back(eval.total(active));
    for (std::size_t i = 0; i < prereqs.size();) {
      const double tau = prereqs[i].threshold;
      for (; i < prereqs.size() && prereqs[i].threshold == tau; ++i) {
        active.emplace_back(prereqs[i].source, prereqs[i].target);
      }
      thresholds_.push_back(tau);
      totals_.push_back(eval.total(active));
    }
  }

  std::size_t steps() const { return totals_.size(); }
  std::size_t course_count() const { return course_count_; }
  double total(std::size_t step) const { return totals_.at(step); }
  double min_total() const { return totals_.front(); }
  double max_total() const { return totals_.back(); }

  /// An edge probability that realises exactly the edges of `step`.
  double probability(std::size_t step) const {
    if (step + 1 >= thresholds_.size()) return 1.0;
    if (step == 0) return thresholds_[1] / 2.0;
    return (thresholds_[step] + thresholds_[step + 1]) / 2.0;
  }

  /// Bisection over the monotone profile for the step whose total is closest
  /// to `target` (ties resolve to the lower step).
  std::size_t closest_step(double target) const {
    std::size_t lo = 0;
    std::size_t hi = totals_.size();
    while (lo < hi) {  // first step with total >= target
      const auto mid = lo + (hi - lo) / 2;
      if (totals_[mid] < target) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == totals_.size()) return totals_.size() - 1;
    if (lo == 0) return 0;
    return (target - totals_[lo - 1] <= totals_[lo] - target) ? lo - 1 : lo;
  }

  const GeneratorConfig& config() const { return config_; }

 private:
  GeneratorConfig config_;
  std::size_t course_count_ = 0;
  std::vector<double> thresholds_;
  std::vector<double> totals_;
};

struct TierTarget {
  std::string label;
  double target_mean = 0.0;
  double target_std = 0.0;
  std::size_t count = 1;

  void validate() const {
    if (label.empty()) throw InputError("tier label must not be empty");
    if (!std::isfinite(target_mean) || target_mean < 0.0) {
      throw InputError("tier '" + label + "': target mean must be finite and non-negative");
    }
    if (!std::isfinite(target_std) || target_std < 0.0) {
      throw InputError("tier '" + label + "': target std must be finite and non-negative");
    }
    if (count < 1) throw InputError("tier '" + label + "': count must be at least 1");
    if (count > 10000) throw InputError("tier '" + label + "': count is too large");
  }
};

/// Attainment tolerances for realised tier moments.
inline constexpr double kMeanTolerance = 5.0;
inline constexpr double kStdTolerance = 10.0;

struct GeneratedCurriculum {
  GeneratorConfig config;
  DegreePlan plan;
  double complexity = 0.0;
};

struct TierOutcome {
  TierTarget target;
  double achieved_mean = 0.0;
  double achieved_std = 0.0;
  bool attained = false;
  std::vector<GeneratedCurriculum> curricula;
};

struct TierStudy {
  ComplexitySampleSet samples;
  std::vector<TierOutcome> tiers;
};

struct StudyOptions {
  std::size_t seeds_per_curriculum = 6;
  std::size_t max_rounds = 40;
};

namespace detail {

inline std::vector<double> standard_scores(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  std::vector<double> z(count);
  for (auto& v : z) v = rng.normal();
  if (count < 2) return std::vector<double>(count, 0.0);
  const auto m = stats::moments(z);
  const double sd = m.stddev();
  for (auto& v : z) v = sd > 0.0 ? (v - m.mean()) / sd : 0.0;
  return z;
}

inline std::string format_points(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace detail

/// Synthetic study whose per-tier complexity samples match the requested
/// moments. Each tier draws standardized normal scores; every curriculum then
/// picks, among a few layout seeds, the edge probability whose complexity is
/// closest to its score's target. Location and scale of the targets are
/// corrected over rounds until the realised moments settle. Tiers that cannot
/// reach the tolerances are returned with attained = false.
inline TierStudy generate_tier_study(const std::vector<TierTarget>& targets,
                                     const GeneratorConfig& base, StudyOptions options = {}) {
  base.validate();
  if (targets.empty()) throw InputError("at least one tier target is required");
  for (const auto& t : targets) t.validate();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i].label == targets[j].label) {
        throw InputError("duplicate tier label '" + targets[i].label + "'");
      }
    }
  }
  if (options.seeds_per_curriculum < 1) throw InputError("need at least one seed per curriculum");

  const double min_attainable = static_cast<double>(base.num_terms * base.min_courses_per_term);
  for (const auto& t : targets) {
    if (t.target_mean < min_attainable) {
      throw InfeasibleError("tier '" + t.label + "': target mean " +
                            detail::format_points(t.target_mean) +
                            " is below the minimum attainable complexity " +
                            detail::format_points(min_attainable) +
                            " (every course scores at least 1 and a curriculum has at least " +
                            std::to_string(base.num_terms * base.min_courses_per_term) +
                            " courses)");
    }
  }

  TierStudy study;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const auto& target = targets[ti];
    std::vector<std::vector<ComplexityProfile>> profiles(target.count);
    double best_reachable = 0.0;
    for (std::size_t j = 0; j < target.count; ++j) {
      for (std::size_t a = 0; a < options.seeds_per_curriculum; ++a) {
        auto cfg = base;
        cfg.seed = derive_seed(base.seed, {ti, j, a});
        profiles[j].emplace_back(cfg);
        best_reachable = std::max(best_reachable, profiles[j].back().max_total());
      }
    }
    if (target.target_mean > best_reachable) {
      throw InfeasibleError("tier '" + target.label + "': target mean " +
                            detail::format_points(target.target_mean) +
                            " exceeds the largest attainable complexity " +
                            detail::format_points(best_reachable) + " for this generator config");
    }

    const auto z = detail::standard_scores(derive_seed(base.seed, {ti, 0xC0FFEEULL}), target.count);
    struct Choice {
      std::size_t seed_index = 0;
      std::size_t step = 0;
      double value = 0.0;
    };
    auto realise = [&](double loc, double scale) {
      std::vector<Choice> picks(target.count);
      for (std::size_t j = 0; j < target.count; ++j) {
        const double want = loc + scale * z[j];
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < profiles[j].size(); ++a) {
          const auto step = profiles[j][a].closest_step(want);
          const double value = profiles[j][a].total(step);
          if (std::fabs(value - want) < best_err) {
            best_err = std::fabs(value - want);
            picks[j] = {a, step, value};
          }
        }
      }
      return picks;
    };
    auto moments_of = [](const std::vector<Choice>& picks) {
      stats::RunningMoments m;
      for (const auto& p : picks) m.push(p.value);
      return m;
    };
    auto error_of = [&](const stats::RunningMoments& m) {
      return std::fabs(m.mean() - target.target_mean) / kMeanTolerance +
             std::fabs(m.stddev() - target.target_std) / kStdTolerance;
    };

    double loc = target.target_mean;
    double scale = target.target_std;
    std::vector<Choice> best;
    double best_error = std::numeric_limits<double>::infinity();
    for (std::size_t round = 0; round < options.max_rounds; ++round) {
      auto picks = realise(loc, scale);
      const auto m = moments_of(picks);
      const double err = error_of(m);
      if (err < best_error) {
        best_error = err;
        best = std::move(picks);
      }
      if (std::fabs(m.mean() - target.target_mean) <= 0.1 * kMeanTolerance &&
          std::fabs(m.stddev() - target.target_std) <= 0.1 * kStdTolerance) {
        break;
      }
      loc += target.target_mean - m.mean();
      if (target.target_std == 0.0) {
        scale = 0.0;
      } else if (m.stddev() > 0.0) {
        scale *= std::clamp(target.target_std / m.stddev(), 0.5, 2.0);
      } else {
        scale = std::max(scale * 2.0, 1.0);
      }
    }

    TierOutcome outcome;
    outcome.target = target;
    ComplexitySampleSet::Tier tier{target.label, {}};
    stats::RunningMoments realised;
    for (std::size_t j = 0; j < target.count; ++j) {
      const auto& pick = best[j];
      const auto& profile = profiles[j][pick.seed_index];
      auto cfg = profile.config();
      cfg.edge_probability = profile.probability(pick.step);
      auto plan = generate_curriculum(cfg);
      const double total = curriculum_complexity(plan).total;
      tier.values.push_back(total);
      realised.push(total);
      outcome.curricula.push_back({cfg, std::move(plan), total});
    }
    outcome.achieved_mean = realised.mean();
    outcome.achieved_std = realised.stddev();
    outcome.attained = std::fabs(outcome.achieved_mean - target.target_mean) <= kMeanTolerance &&
                       std::fabs(outcome.achieved_std - target.target_std) <= kStdTolerance;
    study.samples.tiers.push_back(std::move(tier));
    study.tiers.push_back(std::move(outcome));
  }
  return study;
}

}  // namespace curricula::synth
