#include <gtest/gtest.h>

#include <random>

#include "curricula/error.hpp"
#include "curricula/metrics.hpp"
#include "oracles.hpp"

using namespace curricula;

namespace {

Curriculum chain(std::size_t n) {
  Curriculum c;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id(1, static_cast<char>('A' + i));
    c.courses.push_back({id, id, 3.0, "", ""});
    if (i > 0) c.edges.push_back({std::string(1, static_cast<char>('A' + i - 1)), id, RequisiteKind::prerequisite});
  }
  return c;
}

void expect_matches_oracle(const oracle::SmallDag& dag) {
  const auto adj = oracle::adjacency(dag);
  const auto longest = oracle::longest_containing(adj);
  const auto c = oracle::to_curriculum(dag);
  const auto m = curriculum_complexity(c);
  const auto g = build_requisite_graph(c);
  double total = 0.0;
  for (std::size_t v = 0; v < dag.n; ++v) {
    const auto reach = oracle::reachable_by_paths(adj, v);
    const auto& cm = m.per_course.at(dag.names[v]);
    ASSERT_EQ(cm.blocking, reach.size()) << dag.names[v];
    ASSERT_EQ(cm.delay, longest[v]) << dag.names[v];
    ASSERT_EQ(blocking_factor(g, dag.names[v]), reach.size());
    ASSERT_EQ(delay_factor(g, dag.names[v]), longest[v]);
    std::set<std::string> expected;
    for (auto w : reach) expected.insert(dag.names[w]);
    ASSERT_EQ(reachable_set(g, dag.names[v]), expected);
    total += double(reach.size() + longest[v]);
  }
  ASSERT_DOUBLE_EQ(m.total, total);
}

}  // namespace

TEST(Metrics, ChainOfFour) {
  auto m = curriculum_complexity(chain(4));
  EXPECT_EQ(m.per_course.at("A").blocking, 3u);
  EXPECT_EQ(m.per_course.at("D").blocking, 0u);
  for (const auto& [id, cm] : m.per_course) EXPECT_EQ(cm.delay, 4u) << id;
  EXPECT_DOUBLE_EQ(m.total, 22.0);
}

TEST(Metrics, DelayOnlyWeights) {
  MetricConfig cfg;
  cfg.blocking_weight = 0.0;
  EXPECT_DOUBLE_EQ(curriculum_complexity(chain(4), cfg).total, 16.0);
}

TEST(Metrics, EmptyCurriculum) {
  EXPECT_DOUBLE_EQ(curriculum_complexity(Curriculum{}).total, 0.0);
  EXPECT_TRUE(curriculum_complexity(Curriculum{}).per_course.empty());
}

TEST(Metrics, IsolatedCourseScoresOne) {
  auto m = curriculum_complexity(chain(1));
  EXPECT_EQ(m.per_course.at("A").blocking, 0u);
  EXPECT_EQ(m.per_course.at("A").delay, 1u);
  EXPECT_DOUBLE_EQ(m.total, 1.0);
}

TEST(Metrics, DiamondDelayIsLongestPathNotCount) {
  Curriculum c = chain(0);
  for (const char* id : {"A", "B", "C", "D"}) c.courses.push_back({id, id, 3.0, "", ""});
  for (auto [s, t] : {std::pair{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}}) {
    c.edges.push_back({s, t, RequisiteKind::prerequisite});
  }
  auto m = curriculum_complexity(c);
  EXPECT_EQ(m.per_course.at("A").blocking, 3u);
  EXPECT_EQ(m.per_course.at("B").delay, 3u);
  EXPECT_EQ(m.per_course.at("C").delay, 3u);
  EXPECT_DOUBLE_EQ(m.total, 3 + 1 + 1 + 0 + 4 * 3.0);
}

TEST(Metrics, CyclicCurriculumRejected) {
  Curriculum c = chain(3);
  c.edges.push_back({"C", "A", RequisiteKind::corequisite});
  EXPECT_THROW(curriculum_complexity(c), ValidationError);
}

TEST(Metrics, NegativeWeightsRejected) {
  MetricConfig cfg;
  cfg.delay_weight = -1.0;
  EXPECT_THROW(curriculum_complexity(chain(2), cfg), InputError);
}

TEST(Metrics, MatchesPathEnumerationOnRandomDags) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 600; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> density(0.0, 0.7);
    expect_matches_oracle(oracle::random_dag(rng, size(rng), density(rng)));
  }
}

TEST(Metrics, MatchesPathEnumerationOnAllLabeledDagsUpToFive) {
  std::size_t seen = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    oracle::for_each_labeled_dag(n, [&](const std::vector<std::uint32_t>& adj) {
      oracle::SmallDag dag;
      dag.n = n;
      for (std::size_t u = 0; u < n; ++u) {
        dag.names.push_back(oracle::vertex_name(u));
        for (std::size_t v = 0; v < n; ++v) {
          if (adj[u] & (1u << v)) dag.edges.emplace_back(u, v);
        }
      }
      expect_matches_oracle(dag);
      ++seen;
    });
  }
  EXPECT_EQ(seen, 1u + 3u + 25u + 543u + 29281u);
}

TEST(Metrics, TotalEqualsSumOfTermsAndCourses) {
  DegreePlan plan;
  plan.curriculum = chain(5);
  plan.terms = {{1, {"A", "B"}}, {2, {"C"}}, {3, {"D"}}, {4, {"E"}}};
  plan.curriculum.edges[0].kind = RequisiteKind::corequisite;
  auto m = curriculum_complexity(plan);
  ASSERT_TRUE(m.per_term);
  double terms = 0.0;
  for (double t : *m.per_term) terms += t;
  double courses = 0.0;
  for (const auto& [id, cm] : m.per_course) courses += cm.complexity;
  EXPECT_DOUBLE_EQ(m.total, terms);
  EXPECT_DOUBLE_EQ(m.total, courses);
}

TEST(Metrics, AddingAnEdgeNeverDecreasesAnything) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto dag = oracle::random_dag(rng, 2 + trial % 10, 0.3);
    // dag.edges only go forward in a hidden order, so any missing pair
    // between two edge-compatible vertices can be added.
    const auto before = curriculum_complexity(oracle::to_curriculum(dag));
    const auto adj = oracle::adjacency(dag);
    for (std::size_t u = 0; u < dag.n; ++u) {
      for (std::size_t v = 0; v < dag.n; ++v) {
        if (u == v || (adj[u] & (1u << v))) continue;
        auto extended = adj;
        extended[u] |= 1u << v;
        if (!oracle::is_acyclic(extended)) continue;
        auto bigger = dag;
        bigger.edges.emplace_back(u, v);
        const auto after = curriculum_complexity(oracle::to_curriculum(bigger));
        ASSERT_GE(after.total, before.total);
        for (const auto& [id, cm] : before.per_course) {
          ASSERT_GE(after.per_course.at(id).blocking, cm.blocking);
          ASSERT_GE(after.per_course.at(id).delay, cm.delay);
        }
        goto next_trial;
      }
    }
  next_trial:;
  }
}

TEST(Metrics, RemovingASinkDropsExactlyItsShare) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto dag = oracle::random_dag(rng, 2 + trial % 10, 0.4);
    const auto adj = oracle::adjacency(dag);
    std::size_t sink = dag.n;
    for (std::size_t v = 0; v < dag.n && sink == dag.n; ++v) {
      if (adj[v] == 0) sink = v;
    }
    ASSERT_LT(sink, dag.n);
    const auto before = curriculum_complexity(oracle::to_curriculum(dag));
    oracle::SmallDag smaller;
    std::vector<std::size_t> remap(dag.n, dag.n);
    for (std::size_t v = 0; v < dag.n; ++v) {
      if (v == sink) continue;
      remap[v] = smaller.n++;
      smaller.names.push_back(dag.names[v]);
    }
    std::size_t ancestors = 0;
    for (auto [u, v] : dag.edges) {
      if (v != sink) smaller.edges.emplace_back(remap[u], remap[v]);
    }
    for (std::size_t u = 0; u < dag.n; ++u) {
      auto r = oracle::reachable_by_paths(adj, u);
      if (std::ranges::find(r, sink) != r.end()) ++ancestors;
    }
    const auto after = curriculum_complexity(oracle::to_curriculum(smaller));
    const auto& removed = before.per_course.at(dag.names[sink]);
    EXPECT_EQ(removed.blocking, 0u);
    EXPECT_LE(after.total, before.total - removed.complexity - double(ancestors) + 1e-9);
    for (const auto& [id, cm] : after.per_course) {
      EXPECT_LE(cm.blocking, before.per_course.at(id).blocking);
      EXPECT_LE(cm.delay, before.per_course.at(id).delay);
    }
  }
}

TEST(Metrics, WeightsScaleLinearly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::to_curriculum(oracle::random_dag(rng, 1 + trial % 12, 0.3));
    MetricConfig blocking_only{1.0, 0.0};
    MetricConfig delay_only{0.0, 1.0};
    MetricConfig mixed{2.5, 0.75};
    const double b = curriculum_complexity(c, blocking_only).total;
    const double d = curriculum_complexity(c, delay_only).total;
    EXPECT_NEAR(curriculum_complexity(c, mixed).total, 2.5 * b + 0.75 * d, 1e-9);
    const auto base = curriculum_complexity(c).total;
    const auto scaled = curriculum_complexity(c, MetricConfig{3.0, 3.0}).total;
    EXPECT_NEAR(scaled, 3.0 * base, 1e-9);
  }
}

TEST(Metrics, EdgeKindFilterIgnoresExcludedEdges) {
  Curriculum c = chain(3);
  c.edges[1].kind = RequisiteKind::strict_corequisite;
  MetricConfig cfg;
  cfg.edge_kinds = EdgeKinds{RequisiteKind::prerequisite};
  auto m = curriculum_complexity(c, cfg);
  EXPECT_EQ(m.per_course.at("A").blocking, 1u);
  EXPECT_EQ(m.per_course.at("C").delay, 1u);
  EXPECT_DOUBLE_EQ(m.total, (1 + 2) + (0 + 2) + (0 + 1));
}

TEST(Metrics, EmptyEdgeKindSetRejected) {
  MetricConfig cfg;
  cfg.edge_kinds = EdgeKinds{};
  EXPECT_THROW(curriculum_complexity(chain(2), cfg), InputError);
}
