#include <gtest/gtest.h>

#include "curricula/error.hpp"
#include "curricula/random.hpp"
#include "curricula/synthgen.hpp"
#include "curricula/validate.hpp"

using namespace curricula;
using namespace curricula::synth;

TEST(Random, SplitMixReferenceSequence) {
  // First outputs for seed 1234567, from the published reference code.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(Random, UniformsInRange) {
  SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const auto k = rng.uniform_int(3, 7);
    EXPECT_GE(k, 3u);
    EXPECT_LE(k, 7u);
  }
}

TEST(Random, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, {0, 0}), derive_seed(1, {0, 1}));
  EXPECT_NE(derive_seed(1, {0, 1}), derive_seed(1, {1, 0}));
  EXPECT_EQ(derive_seed(7, {2, 3}), derive_seed(7, {2, 3}));
}

TEST(Generator, Deterministic) {
  GeneratorConfig cfg;
  cfg.seed = 42;
  const auto a = generate_curriculum(cfg);
  const auto b = generate_curriculum(cfg);
  EXPECT_EQ(serialize_curriculum(a), serialize_curriculum(b));
  cfg.seed = 43;
  EXPECT_NE(serialize_curriculum(generate_curriculum(cfg)), serialize_curriculum(a));
}

TEST(Generator, AlwaysValidAndWithinBounds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.edge_probability = double(seed % 11) / 10.0;
    cfg.corequisite_probability = double(seed % 5) / 4.0;
    cfg.num_terms = 1 + seed % 9;
    cfg.min_courses_per_term = 1 + seed % 3;
    cfg.max_courses_per_term = cfg.min_courses_per_term + seed % 4;
    const auto plan = generate_curriculum(cfg);
    ASSERT_TRUE(validate_curriculum(plan.curriculum).empty()) << seed;
    ASSERT_TRUE(validate_degree_plan(plan).empty()) << seed;
    ASSERT_EQ(plan.terms.size(), cfg.num_terms);
    for (const auto& t : plan.terms) {
      ASSERT_GE(t.course_ids.size(), cfg.min_courses_per_term);
      ASSERT_LE(t.course_ids.size(), cfg.max_courses_per_term);
    }
    std::map<std::string, std::size_t> prereqs;
    for (const auto& e : plan.curriculum.edges) {
      if (e.kind == RequisiteKind::prerequisite) ++prereqs[e.target];
    }
    for (const auto& [id, count] : prereqs) ASSERT_LE(count, cfg.max_prereqs_per_course);
  }
}

TEST(Generator, NoEdgesMeansOnePointPerCourse) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.edge_probability = 0.0;
    cfg.corequisite_probability = 0.0;
    const auto plan = generate_curriculum(cfg);
    EXPECT_TRUE(plan.curriculum.edges.empty());
    EXPECT_DOUBLE_EQ(curriculum_complexity(plan).total, double(plan.curriculum.courses.size()));
  }
}

TEST(Generator, ComplexityMonotoneInEdgeProbability) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    double prev = -1.0;
    std::size_t prev_edges = 0;
    for (int i = 0; i <= 20; ++i) {
      GeneratorConfig cfg;
      cfg.seed = seed;
      cfg.edge_probability = i / 20.0;
      const auto plan = generate_curriculum(cfg);
      const double total = curriculum_complexity(plan).total;
      EXPECT_GE(total, prev) << seed << " " << i;
      EXPECT_GE(plan.curriculum.edges.size(), prev_edges);
      prev = total;
      prev_edges = plan.curriculum.edges.size();
    }
  }
}

TEST(Profile, StepsMatchGeneratedCurricula) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.corequisite_probability = 0.2;
    ComplexityProfile profile(cfg);
    ASSERT_GE(profile.steps(), 1u);
    for (std::size_t step = 0; step < profile.steps(); ++step) {
      auto at = cfg;
      at.edge_probability = profile.probability(step);
      const auto plan = generate_curriculum(at);
      ASSERT_DOUBLE_EQ(curriculum_complexity(plan).total, profile.total(step)) << seed << " " << step;
      if (step) {
        ASSERT_GE(profile.total(step), profile.total(step - 1));
      }
    }
  }
}

TEST(Profile, ClosestStep) {
  GeneratorConfig cfg;
  cfg.seed = 3;
  ComplexityProfile profile(cfg);
  EXPECT_EQ(profile.closest_step(-100.0), 0u);
  EXPECT_EQ(profile.closest_step(1e9), profile.steps() - 1);
  for (double target = profile.min_total(); target <= profile.max_total(); target += 3.7) {
    const auto step = profile.closest_step(target);
    for (std::size_t s = 0; s < profile.steps(); ++s) {
      ASSERT_LE(std::fabs(profile.total(step) - target), std::fabs(profile.total(s) - target));
    }
  }
}

TEST(Study, HitsModestTargetsDeterministically) {
  const std::vector<TierTarget> targets{{"low", 60, 10, 8}, {"high", 120, 30, 8}};
  GeneratorConfig base;
  base.seed = 77;
  const auto a = generate_tier_study(targets, base);
  const auto b = generate_tier_study(targets, base);
  ASSERT_EQ(a.tiers.size(), 2u);
  EXPECT_EQ(a.samples, b.samples);
  for (const auto& t : a.tiers) {
    EXPECT_TRUE(t.attained) << t.target.label << " " << t.achieved_mean << " " << t.achieved_std;
    EXPECT_EQ(t.curricula.size(), 8u);
    for (const auto& g : t.curricula) {
      EXPECT_DOUBLE_EQ(curriculum_complexity(generate_curriculum(g.config)).total, g.complexity);
    }
  }
}

TEST(Study, ZeroSpreadTarget) {
  GeneratorConfig base;
  base.seed = 1;
  const auto s = generate_tier_study({{"flat", 100, 0, 5}}, base);
  EXPECT_TRUE(s.tiers[0].attained) << s.tiers[0].achieved_mean << " " << s.tiers[0].achieved_std;
}

TEST(Study, InfeasibleTargets) {
  GeneratorConfig base;
  EXPECT_THROW(generate_tier_study({{"tiny", 5, 1, 3}}, base), InfeasibleError);
  EXPECT_THROW(generate_tier_study({{"huge", 1e6, 1, 3}}, base), InfeasibleError);
  try {
    generate_tier_study({{"tiny", 5, 1, 3}}, base);
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("32"), std::string::npos) << e.what();
  }
}

TEST(Study, InvalidTargets) {
  GeneratorConfig base;
  EXPECT_THROW(generate_tier_study({}, base), InputError);
  EXPECT_THROW(generate_tier_study({{"a", 100, 10, 0}}, base), InputError);
  EXPECT_THROW(generate_tier_study({{"a", 100, 10, 3}, {"a", 100, 10, 3}}, base), InputError);
  EXPECT_THROW(generate_tier_study({{"a", -1, 10, 3}}, base), InputError);
  GeneratorConfig bad;
  bad.edge_probability = 1.5;
  EXPECT_THROW(generate_tier_study({{"a", 100, 10, 3}}, bad), InputError);
}
