#include <gtest/gtest.h>

#include <random>

#include "evinf/measures.hpp"
#include "support.hpp"

using namespace evinf;

namespace {

InfluenceGraph pair_graph(OpinionDistribution u, OpinionDistribution v, double b) {
  GraphBuilder builder;
  builder.add_node("u", u);
  builder.add_node("v", v);
  builder.add_node("w");
  builder.add_edge("u", "v", edge_bba(b, 1.0 - b, 0.0));
  return builder.build();
}

}  // namespace

TEST(Measures, NamesRoundTrip) {
  for (auto kind : kAllMeasures) EXPECT_EQ(parse_measure(to_string(kind)), kind);
  try {
    parse_measure("s4-prob");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
}

TEST(Measures, ScenarioProducts) {
  auto g = pair_graph({0.8, 0.0, 0.2}, {0.25, 0.25, 0.5}, 0.5);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Plain), 0.5);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario1Prob), 0.4);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario2Prob), 0.3);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario3Prob), 0.3);
  const auto& u = g.node(0);
  const auto& v = g.node(1);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario1Belief), u.belief_pos * 0.5);
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario2Belief), u.belief_pos * 0.5 * (1 - v.belief_neg));
  EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario3Belief), u.belief_pos * 0.5 * (1 - v.belief_pos));
}

TEST(Measures, NonEdgesAndErrors) {
  auto g = pair_graph({0.8, 0.0, 0.2}, {0.25, 0.25, 0.5}, 0.5);
  for (auto kind : kAllMeasures) {
    EXPECT_EQ(influence(g, "v", "u", kind), 0.0);
    EXPECT_EQ(influence(g, "u", "w", kind), 0.0);
  }
  try {
    influence(g, "u", "nobody", MeasureKind::Plain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Lookup);
  }
  EXPECT_THROW(influence(g, "u", "u", MeasureKind::Plain), Error);
}

TEST(MeasuresProperty, BoundedByEdgeMass) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing_support::random_graph(30, 0.2, rng);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      double b = g.edge(e).bba.mass(influence_frame()->singleton("I"));
      for (auto kind : kAllMeasures) {
        double x = edge_influence(g, e, kind);
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, b);
      }
      EXPECT_LE(b, 1.0);
    }
  }
}

TEST(MeasuresProperty, ScenarioTwoPlusThreeIdentity) {
  std::mt19937_64 rng(42);
  std::size_t checked = 0;
  while (checked < 1000) {
    auto g = testing_support::random_graph(20, 0.2, rng);
    for (EdgeIndex e = 0; e < g.edge_count() && checked < 1000; ++e, ++checked) {
      const auto& v = g.node(g.edge(e).dst).opinion;
      double lhs = edge_influence(g, e, MeasureKind::Scenario2Prob) + edge_influence(g, e, MeasureKind::Scenario3Prob);
      double rhs = edge_influence(g, e, MeasureKind::Scenario1Prob) * (2.0 - v.pos() - v.neg());
      EXPECT_NEAR(lhs, rhs, 1e-12);
    }
  }
}

TEST(MeasuresProperty, ZeroNeighborOpinionCollapsesScenarios) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double p = unit(rng), b = unit(rng);
    double q = unit(rng);
    auto no_neg = pair_graph({p, 0.0, 1.0 - p}, {q, 0.0, 1.0 - q}, b);
    EXPECT_DOUBLE_EQ(influence(no_neg, "u", "v", MeasureKind::Scenario2Prob),
                     influence(no_neg, "u", "v", MeasureKind::Scenario1Prob));
    auto no_pos = pair_graph({p, 0.0, 1.0 - p}, {0.0, q, 1.0 - q}, b);
    EXPECT_DOUBLE_EQ(influence(no_pos, "u", "v", MeasureKind::Scenario3Prob),
                     influence(no_pos, "u", "v", MeasureKind::Scenario1Prob));
  }
}

TEST(MeasuresProperty, BeliefMatchesProbabilityOnCategoricalOpinions) {
  const OpinionDistribution cats[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& u : cats) {
    for (const auto& v : cats) {
      auto g = pair_graph(u, v, 0.7);
      EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario1Belief),
                       influence(g, "u", "v", MeasureKind::Scenario1Prob));
      EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario2Belief),
                       influence(g, "u", "v", MeasureKind::Scenario2Prob));
      EXPECT_DOUBLE_EQ(influence(g, "u", "v", MeasureKind::Scenario3Belief),
                       influence(g, "u", "v", MeasureKind::Scenario3Prob));
    }
  }
}
