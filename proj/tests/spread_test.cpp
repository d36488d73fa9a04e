#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "evinf/spread.hpp"
#include "support.hpp"

using namespace evinf;
using testing_support::dense_influence;
using testing_support::dense_sigma;

namespace {

// u -> x -> v with Inf(u,x) = 0.5, Inf(x,v) = 0.4.
InfluenceGraph path_graph() {
  GraphBuilder b;
  b.add_node("u");
  b.add_node("x");
  b.add_node("v");
  b.add_edge("u", "x", edge_bba(0.5, 0.5, 0.0));
  b.add_edge("x", "v", edge_bba(0.4, 0.6, 0.0));
  return b.build();
}

struct Triple {
  InfluenceGraph g;
  std::vector<NodeIndex> s, t;
  NodeIndex x;
};

Triple random_triple(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(2, 30);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t n = size(rng);
  Triple out{testing_support::random_graph(n, 0.05 + 0.35 * unit(rng), rng), {}, {}, 0};
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::shuffle(order.begin(), order.end(), rng);
  out.x = order.back();
  std::size_t t_size = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  std::size_t s_size = std::uniform_int_distribution<std::size_t>(0, t_size)(rng);
  out.t.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t_size));
  out.s.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s_size));
  return out;
}

std::vector<NodeIndex> with(std::vector<NodeIndex> set, NodeIndex x) {
  set.push_back(x);
  return set;
}

}  // namespace

TEST(Phi, Examples) {
  auto g = path_graph();
  std::vector<NodeIndex> s{0};
  for (auto kind : kAllMeasures) EXPECT_EQ(phi(g, s, 0, kind), 1.0);
  EXPECT_EQ(phi(g, {}, 2, MeasureKind::Plain), 0.0);
  EXPECT_NEAR(phi(g, s, 2, MeasureKind::Plain), 0.2, 1e-15);
  EXPECT_NEAR(phi(g, s, 1, MeasureKind::Plain), 1.0, 1e-15);
  EXPECT_THROW(phi(g, s, 7, MeasureKind::Plain), Error);
}

TEST(Sigma, Examples) {
  auto g = path_graph();
  std::vector<NodeIndex> s{0};
  EXPECT_EQ(sigma(g, {}, MeasureKind::Plain), 0.0);
  EXPECT_NEAR(sigma(g, s, MeasureKind::Plain), 2.2, 1e-15);
  std::vector<NodeIndex> all{0, 1, 2};
  for (auto kind : kAllMeasures) EXPECT_EQ(sigma(g, all, kind), 3.0);
}

TEST(Sigma, DedupeDirectCountsEdgeOnce) {
  auto g = path_graph();
  std::vector<NodeIndex> s{0};
  SpreadOptions opts;
  opts.dedupe_direct = true;
  EXPECT_NEAR(phi(g, s, 1, MeasureKind::Plain, opts), 0.5, 1e-15);
  EXPECT_NEAR(sigma(g, s, MeasureKind::Plain, opts), 1.7, 1e-15);
}

TEST(Sigma, CappedLimitsEachNode) {
  GraphBuilder b;
  b.add_node("u");
  b.add_node("v");
  b.add_edge("u", "v", edge_bba(0.8, 0.2, 0.0));
  auto g = b.build();
  std::vector<NodeIndex> s{0};
  EXPECT_NEAR(sigma(g, s, MeasureKind::Plain), 2.6, 1e-15);
  SpreadOptions capped;
  capped.phi_mode = PhiMode::Capped;
  EXPECT_EQ(sigma(g, s, MeasureKind::Plain, capped), 2.0);
}

TEST(Sigma, AtLeastSeedCount) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    auto tr = random_triple(rng);
    for (auto kind : kAllMeasures) EXPECT_GE(sigma(tr.g, tr.t, kind), static_cast<double>(tr.t.size()) - 1e-12);
  }
}

TEST(Sigma, MatchesDenseOracle) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    auto tr = random_triple(rng);
    auto kind = kAllMeasures[trial % kAllMeasures.size()];
    auto w = dense_influence(tr.g, kind);
    std::vector<char> in(tr.g.node_count(), 0);
    for (auto v : tr.t) in[v] = 1;
    EXPECT_NEAR(sigma(tr.g, tr.t, kind), dense_sigma(w, in, false), 1e-9);
    SpreadOptions capped;
    capped.phi_mode = PhiMode::Capped;
    EXPECT_NEAR(sigma(tr.g, tr.t, kind, capped), dense_sigma(w, in, true), 1e-9);
  }
}

TEST(SpreadEvaluator, IncrementalMatchesDirect) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    auto tr = random_triple(rng);
    for (auto mode : {PhiMode::Literal, PhiMode::Capped}) {
      for (bool dedupe : {false, true}) {
        SpreadOptions opts{mode, dedupe};
        auto kind = kAllMeasures[trial % kAllMeasures.size()];
        SpreadEvaluator eval(tr.g, kind, opts);
        std::vector<NodeIndex> seeds;
        for (auto v : tr.t) {
          double before = sigma(tr.g, seeds, kind, opts);
          double gain = eval.gain(v);
          eval.add(v);
          seeds.push_back(v);
          double after = sigma(tr.g, seeds, kind, opts);
          EXPECT_NEAR(gain, after - before, 1e-9);
          EXPECT_NEAR(eval.value(), after, 1e-9);
        }
        for (NodeIndex v = 0; v < tr.g.node_count(); ++v) EXPECT_NEAR(eval.phi(v), phi(tr.g, seeds, v, kind, opts), 1e-9);
        for (auto v : tr.t) EXPECT_EQ(eval.gain(v), 0.0);
      }
    }
  }
}

TEST(SigmaProperty, LiteralObjectiveIsSubmodular) {
  std::mt19937_64 rng(54);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto tr = random_triple(rng);
    for (auto kind : kAllMeasures) {
      double gs = sigma(tr.g, with(tr.s, tr.x), kind) - sigma(tr.g, tr.s, kind);
      double gt = sigma(tr.g, with(tr.t, tr.x), kind) - sigma(tr.g, tr.t, kind);
      if (gs < gt - 1e-9) ++violations;
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(SigmaProperty, CappedObjectiveIsMonotoneAndSubmodular) {
  std::mt19937_64 rng(55);
  SpreadOptions capped;
  capped.phi_mode = PhiMode::Capped;
  int monotone = 0, submodular = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto tr = random_triple(rng);
    for (auto kind : kAllMeasures) {
      double s = sigma(tr.g, tr.s, kind, capped);
      double t = sigma(tr.g, tr.t, kind, capped);
      if (s > t + 1e-9) ++monotone;
      double gs = sigma(tr.g, with(tr.s, tr.x), kind, capped) - s;
      double gt = sigma(tr.g, with(tr.t, tr.x), kind, capped) - t;
      if (gs < gt - 1e-9) ++submodular;
    }
  }
  EXPECT_EQ(monotone, 0);
  EXPECT_EQ(submodular, 0);
}

// Adding x to S replaces the accumulated Phi(S, x) by 1. With a direct edge
// counted twice, one edge of weight 0.8 into a sink already gives 1.6.
TEST(SigmaProperty, LiteralObjectiveIsNotMonotone) {
  GraphBuilder b;
  b.add_node("u");
  b.add_node("x");
  b.add_edge("u", "x", edge_bba(0.8, 0.2, 0.0));
  auto g = b.build();
  std::vector<NodeIndex> s{0};
  std::vector<NodeIndex> t{0, 1};
  EXPECT_NEAR(sigma(g, s, MeasureKind::Plain), 2.6, 1e-15);
  EXPECT_EQ(sigma(g, t, MeasureKind::Plain), 2.0);
  EXPECT_GT(sigma(g, s, MeasureKind::Plain), sigma(g, t, MeasureKind::Plain));
}
