#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "curricula/error.hpp"
#include "curricula/graph.hpp"
#include "curricula/model.hpp"
#include "curricula/validate.hpp"

namespace curricula {

/// Weights of the blocking/delay combination and the edge kinds that enter
/// the metric graph.
struct MetricConfig {
  double blocking_weight = 1.0;
  double delay_weight = 1.0;
  EdgeKinds edge_kinds = EdgeKinds::all();

  void validate() const {
    if (!(blocking_weight >= 0.0) || !(delay_weight >= 0.0) || !std::isfinite(blocking_weight) ||
        !std::isfinite(delay_weight)) {
      throw InputError("metric weights must be finite and non-negative");
    }
    if (blocking_weight == 0.0 && delay_weight == 0.0) {
      throw InputError("metric weights must not both be zero");
    }
    if (edge_kinds.empty()) throw InputError("at least one edge kind must be enabled");
  }
};

inline RequisiteGraph build_requisite_graph(const Curriculum& c, const MetricConfig& config) {
  config.validate();
  return build_requisite_graph(c, config.edge_kinds);
}

struct CourseMetrics {
  std::string course_id;
  std::size_t blocking = 0;
  std::size_t delay = 1;
  double complexity = 0.0;
};

struct CurriculumMetrics {
  std::map<std::string, CourseMetrics> per_course;
  std::optional<std::vector<double>> per_term;
  double total = 0.0;
};

/// Courses reachable from `id` by one or more edges, excluding `id` itself.
inline std::set<std::string> reachable_set(const RequisiteGraph& g, std::string_view id) {
  const auto start = g.at(id);
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{start};
  std::set<std::string> result;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : g.successors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      result.insert(g.id(w));
      stack.push_back(w);
    }
  }
  result.erase(std::string(id));  // only possible on cyclic input
  return result;
}

inline std::size_t blocking_factor(const RequisiteGraph& g, std::string_view id) {
  return reachable_set(g, id).size();
}

/// Longest paths through each vertex, counted in vertices.
struct LongestPaths {
  std::vector<std::size_t> ending_at;
  std::vector<std::size_t> starting_at;

  std::size_t through(std::size_t v) const { return ending_at[v] + starting_at[v] - 1; }
};

inline LongestPaths longest_paths(const RequisiteGraph& g, std::span<const std::size_t> topo) {
  LongestPaths lp{std::vector<std::size_t>(g.size(), 1), std::vector<std::size_t>(g.size(), 1)};
  for (auto v : topo) {
    for (auto p : g.predecessors(v)) lp.ending_at[v] = std::max(lp.ending_at[v], lp.ending_at[p] + 1);
  }
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (auto s : g.successors(*it)) {
      lp.starting_at[*it] = std::max(lp.starting_at[*it], lp.starting_at[s] + 1);
    }
  }
  return lp;
}

inline LongestPaths longest_paths(const RequisiteGraph& g) {
  const auto topo = topological_indices(g);
  return longest_paths(g, topo);
}

/// Vertex count of the longest directed path containing `id`.
inline std::size_t delay_factor(const RequisiteGraph& g, std::string_view id) {
  const auto v = g.at(id);
  return longest_paths(g).through(v);
}

inline double course_complexity(std::size_t blocking, std::size_t delay,
                                const MetricConfig& config = {}) {
  return config.blocking_weight * static_cast<double>(blocking) +
         config.delay_weight * static_cast<double>(delay);
}

/// Descendant counts for all vertices at once: bitset rows accumulated in
/// reverse topological order.
inline std::vector<std::size_t> blocking_factors(const RequisiteGraph& g,
                                                 std::span<const std::size_t> topo) {
  const std::size_t words = (g.size() + 63) / 64;
  std::vector<std::uint64_t> reach(g.size() * words, 0);
  std::vector<std::size_t> counts(g.size(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto* row = reach.data() + *it * words;
    for (auto s : g.successors(*it)) {
      row[s / 64] |= std::uint64_t{1} << (s % 64);
      const auto* other = reach.data() + s * words;
      for (std::size_t k = 0; k < words; ++k) row[k] |= other[k];
    }
    std::size_t n = 0;
    for (std::size_t k = 0; k < words; ++k) n += static_cast<std::size_t>(std::popcount(row[k]));
    counts[*it] = n;
  }
  return counts;
}

namespace detail {

inline CurriculumMetrics metrics_on_graph(const RequisiteGraph& g, const MetricConfig& config) {
  const auto topo = topological_indices(g);
  const auto lp = longest_paths(g, topo);
  const auto blocking = blocking_factors(g, topo);
  CurriculumMetrics m;
  for (std::size_t v = 0; v < g.size(); ++v) {
    CourseMetrics cm{g.id(v), blocking[v], lp.through(v), 0.0};
    cm.complexity = course_complexity(cm.blocking, cm.delay, config);
    m.total += cm.complexity;
    m.per_course.emplace(cm.course_id, std::move(cm));
  }
  return m;
}

}  // namespace detail

/// Per-course metrics and the total. Throws ValidationError on an invalid
/// curriculum and InputError on a bad config.
inline CurriculumMetrics curriculum_complexity(const Curriculum& c, const MetricConfig& config = {}) {
  config.validate();
  require_valid(c);
  return detail::metrics_on_graph(build_requisite_graph(c, config.edge_kinds), config);
}

/// As above, plus per-term totals in plan order.
inline CurriculumMetrics curriculum_complexity(const DegreePlan& plan,
                                               const MetricConfig& config = {}) {
  config.validate();
  require_valid(plan);
  auto m = detail::metrics_on_graph(build_requisite_graph(plan.curriculum, config.edge_kinds),
                                    config);
  std::vector<double> per_term;
  per_term.reserve(plan.terms.size());
  for (const auto& term : plan.terms) {
    double sum = 0.0;
    for (const auto& id : term.course_ids) sum += m.per_course.at(id).complexity;
    per_term.push_back(sum);
  }
  m.per_term = std::move(per_term);
  return m;
}

}  // namespace curricula
