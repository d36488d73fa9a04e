#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "evinf/opinion_cascade.hpp"
#include "support.hpp"

using namespace evinf;

namespace {

// v -> u with m(I) = w.
InfluenceGraph pair_graph(double w) {
  GraphBuilder b;
  b.add_node("v");
  b.add_node("u");
  b.add_edge("v", "u", edge_bba(w, 1.0 - w, 0.0));
  return b.build();
}

OcState manual_state(const InfluenceGraph& g, std::vector<double> op, std::vector<char> active, std::vector<double> theta) {
  OcState s;
  s.opinion = std::move(op);
  s.active = std::move(active);
  s.threshold = std::move(theta);
  s.weight.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) s.weight[e] = g.edge(e).influence;
  return s;
}

// Selection loop restated over plain vectors.
std::vector<NodeIndex> reference_oc(const InfluenceGraph& g, std::size_t k, double prune, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  auto s = oc_init(g, seed);
  auto pmg = [&](NodeIndex v) {
    double total = s.opinion[v];
    for (EdgeIndex e : g.out_edges(v)) {
      NodeIndex u = g.edge(e).dst;
      double w = s.weight[e];
      double theta = std::max(s.threshold[u], kThresholdFloor);
      total += (s.active[u] ? 1.0 : w / theta) * (s.opinion[u] + s.opinion[v] * w);
    }
    return total;
  };
  std::vector<std::pair<double, NodeIndex>> ranked;
  for (NodeIndex v = 0; v < n; ++v) ranked.emplace_back(-pmg(v), v);
  std::sort(ranked.begin(), ranked.end());
  std::size_t keep = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(n * (1.0 - prune))), k, n);
  std::vector<NodeIndex> cand;
  for (std::size_t i = 0; i < keep; ++i) cand.push_back(ranked[i].second);
  std::vector<NodeIndex> picks;
  while (picks.size() < k) {
    auto free = [&](NodeIndex v) { return std::find(picks.begin(), picks.end(), v) == picks.end(); };
    bool fresh = std::any_of(cand.begin(), cand.end(), [&](NodeIndex v) { return free(v) && !s.active[v]; });
    NodeIndex best = n;
    double best_value = 0.0;
    for (auto v : cand) {
      if (!free(v) || (fresh && s.active[v])) continue;
      double p = pmg(v);
      if (best == n || p > best_value || (p == best_value && v < best)) {
        best = v;
        best_value = p;
      }
    }
    picks.push_back(best);
    s.active[best] = 1;
    auto before = s;
    for (NodeIndex v = 0; v < n; ++v) {
      double pressure = 0.0, shift = 0.0;
      bool touched = false;
      for (EdgeIndex e : g.in_edges(v)) {
        NodeIndex u = g.edge(e).src;
        if (!before.active[u]) continue;
        touched = true;
        pressure += before.weight[e];
        shift += before.opinion[u] * before.weight[e];
      }
      if (!touched) continue;
      if (!before.active[v] && pressure >= before.threshold[v]) s.active[v] = 1;
      s.opinion[v] = before.opinion[v] + shift;
    }
  }
  return picks;
}

}  // namespace

TEST(OpinionCascade, PmgWithActiveNeighbor) {
  auto g = pair_graph(0.2);
  auto s = manual_state(g, {1.0, 0.5}, {0, 1}, {0.5, 0.5});
  EXPECT_NEAR(oc_pmg(s, g, 0), 1.7, 1e-12);
}

TEST(OpinionCascade, PmgWithInactiveNeighbor) {
  auto g = pair_graph(0.3);
  auto s = manual_state(g, {1.0, 0.0}, {0, 0}, {0.5, 0.6});
  EXPECT_NEAR(oc_pmg(s, g, 0), 1.15, 1e-12);
}

TEST(OpinionCascade, PmgOfIsolatedNodeIsItsOpinion) {
  GraphBuilder b;
  b.add_node("a", OpinionDistribution(0.5, 0.5, 0.0));
  b.add_node("b", OpinionDistribution(0.7, 0.1, 0.2));
  auto g = b.build();
  auto s = oc_init(g);
  EXPECT_EQ(oc_pmg(s, g, 0), 0.0);
  EXPECT_NEAR(oc_pmg(s, g, 1), 0.6, 1e-12);
  EXPECT_THROW(oc_pmg(s, g, 5), Error);
}

TEST(OpinionCascade, ZeroThresholdUsesFloor) {
  auto g = pair_graph(0.3);
  auto s = manual_state(g, {1.0, 0.0}, {0, 0}, {0.5, 0.0});
  EXPECT_NEAR(oc_pmg(s, g, 0), 1.0 + (0.3 / kThresholdFloor) * 0.3, 1e-3);
}

TEST(OpinionCascade, StepUpdatesOpinionFromActiveInNeighbor) {
  GraphBuilder b;
  b.add_node("u");
  b.add_node("v");
  b.add_edge("u", "v", edge_bba(0.2, 0.8, 0.0));
  auto g = b.build();
  auto s = manual_state(g, {0.5, 0.1}, {1, 0}, {0.0, 0.9});
  auto next = oc_step(s, g);
  EXPECT_NEAR(next.opinion[1], 0.2, 1e-12);
  EXPECT_FALSE(next.active[1]);
  EXPECT_EQ(next.opinion[0], 0.5);
}

TEST(OpinionCascade, StepActivatesAtThreshold) {
  auto g = pair_graph(0.25);
  auto s = manual_state(g, {1.0, 0.0}, {1, 0}, {0.0, 0.25});
  EXPECT_TRUE(oc_step(s, g).active[1]);
  s.threshold[1] = 0.2500001;
  EXPECT_FALSE(oc_step(s, g).active[1]);
}

TEST(OpinionCascade, StepWithoutActiveNodesIsIdentity) {
  std::mt19937_64 rng(91);
  auto g = testing_support::random_graph(20, 0.2, rng);
  auto s = oc_init(g, 4);
  auto next = oc_step(s, g);
  EXPECT_EQ(next.opinion, s.opinion);
  EXPECT_EQ(next.active, s.active);
}

TEST(OpinionCascade, InitNormalizesIncomingWeights) {
  GraphBuilder b;
  for (const char* id : {"a", "b", "c"}) b.add_node(id);
  b.add_edge("a", "c", edge_bba(0.8, 0.2, 0.0));
  b.add_edge("b", "c", edge_bba(0.7, 0.3, 0.0));
  b.add_edge("a", "b", edge_bba(0.4, 0.6, 0.0));
  auto g = b.build();
  auto s = oc_init(g);
  EXPECT_NEAR(s.weight[*g.find_edge(0, 2)], 0.8 / 1.5, 1e-12);
  EXPECT_NEAR(s.weight[*g.find_edge(1, 2)], 0.7 / 1.5, 1e-12);
  EXPECT_EQ(s.weight[*g.find_edge(0, 1)], 0.4);
  for (double t : s.threshold) {
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, 1.0);
  }
  EXPECT_EQ(oc_init(g, 9).threshold, oc_init(g, 9).threshold);
}

TEST(OpinionCascade, MaximizePicksPositiveHub) {
  GraphBuilder b;
  b.add_node("hub", OpinionDistribution(0.9, 0.0, 0.1));
  for (int i = 0; i < 4; ++i) b.add_node("leaf" + std::to_string(i), OpinionDistribution(0.2, 0.2, 0.6));
  for (int i = 0; i < 4; ++i) b.add_edge("hub", "leaf" + std::to_string(i), edge_bba(0.6, 0.4, 0.0));
  auto g = b.build();
  auto r = oc_maximize(g, 1);
  EXPECT_EQ(r.seeds, (std::vector<NodeIndex>{0}));
  EXPECT_EQ(r.model, "oc");
  EXPECT_EQ(r.label(), "oc");
}

TEST(OpinionCascade, BudgetEdges) {
  std::mt19937_64 rng(92);
  auto g = testing_support::random_graph(10, 0.3, rng);
  EXPECT_TRUE(oc_maximize(g, 0).seeds.empty());
  auto over = oc_maximize(g, 25);
  EXPECT_EQ(over.seeds.size(), 10u);
  EXPECT_EQ(over.warnings.size(), 1u);
  auto sorted = over.seeds;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  for (double bad : {-0.1, 1.5}) {
    OcOptions opts;
    opts.prune_fraction = bad;
    try {
      oc_maximize(g, 2, opts);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config);
    }
  }
}

TEST(OpinionCascadeProperty, MatchesReferenceSelection) {
  std::mt19937_64 rng(93);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = testing_support::random_graph(5 + trial % 30, 0.15, rng);
    std::size_t k = 1 + trial % 6;
    OcOptions opts;
    opts.prune_fraction = (trial % 5) * 0.25;
    opts.rng_seed = static_cast<std::uint64_t>(trial);
    auto r = oc_maximize(g, k, opts);
    EXPECT_EQ(r.seeds, reference_oc(g, std::min(k, g.node_count()), opts.prune_fraction, opts.rng_seed));
    ASSERT_EQ(r.seeds.size(), r.sigma_values.size());
  }
}

TEST(OpinionCascadeProperty, ActivationNeverReverts) {
  std::mt19937_64 rng(94);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing_support::random_graph(25, 0.2, rng);
    auto s = oc_init(g, static_cast<std::uint64_t>(trial));
    s.active[0] = 1;
    for (int round = 0; round < 10; ++round) {
      auto next = oc_step(s, g);
      for (NodeIndex v = 0; v < g.node_count(); ++v) EXPECT_GE(next.active[v], s.active[v]);
      s = std::move(next);
    }
  }
}
