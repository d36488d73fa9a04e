#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "evinf/credit.hpp"
#include "support.hpp"

using namespace evinf;

namespace {

InfluenceGraph graph_with_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  for (auto [u, v] : edges) b.add_edge(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), edge_bba(0.5, 0.5, 0));
  return b.build();
}

// Spread of S computed straight from the log: per action, first performance
// times, candidate sets from in-neighbors, and the chain recursion.
double oracle_spread(const InfluenceGraph& g, const std::vector<ActionRecord>& log, const std::vector<char>& in) {
  std::map<std::string, std::map<NodeIndex, std::int64_t>> first;
  for (const auto& r : log) {
    auto& t = first[r.action];
    auto it = t.find(r.user);
    if (it == t.end() || r.time < it->second) t[r.user] = r.time;
  }
  std::vector<double> actions(g.node_count(), 0.0);
  for (const auto& [a, times] : first) {
    for (const auto& [u, t] : times) actions[u] += 1.0;
  }
  double total = 0.0;
  for (const auto& [a, times] : first) {
    std::map<NodeIndex, double> gamma;
    std::vector<std::pair<std::int64_t, NodeIndex>> order;
    for (const auto& [u, t] : times) order.emplace_back(t, u);
    std::sort(order.begin(), order.end());
    for (const auto& [t, u] : order) {
      if (in[u]) {
        gamma[u] = 1.0;
      } else {
        std::vector<NodeIndex> cand;
        for (EdgeIndex e : g.in_edges(u)) {
          auto v = g.edge(e).src;
          auto it = times.find(v);
          if (it != times.end() && it->second < t) cand.push_back(v);
        }
        double s = 0.0;
        for (auto v : cand) s += gamma[v] / static_cast<double>(cand.size());
        gamma[u] = s;
      }
      total += gamma[u] / actions[u];
    }
  }
  return total;
}

std::vector<ActionRecord> random_log(const InfluenceGraph& g, std::mt19937_64& rng, int actions) {
  std::vector<ActionRecord> log;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> time(0, 50);
  for (int a = 0; a < actions; ++a) {
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (unit(rng) < 0.35) log.push_back({v, "a" + std::to_string(a), time(rng)});
    }
  }
  return log;
}

}  // namespace

TEST(CreditDistribution, EmptyLogGivesZeroCredit) {
  auto g = graph_with_edges(3, {{0, 1}, {1, 2}});
  auto t = cd_assign_credits(g, {});
  EXPECT_TRUE(t.actions.empty());
  for (double c : t.node_credit) EXPECT_EQ(c, 0.0);
  auto r = cd_maximize(t, 2);
  EXPECT_EQ(r.seeds, (std::vector<NodeIndex>{0, 1}));
  for (double gain : r.marginal_gains) EXPECT_EQ(gain, 0.0);
}

TEST(CreditDistribution, SingleChainGivesFullCredit) {
  auto g = graph_with_edges(2, {{0, 1}});
  std::vector<ActionRecord> log{{0, "a", 1}, {1, "a", 2}};
  auto t = cd_assign_credits(g, log);
  EXPECT_EQ(t.direct_credit(0, 1, "a"), 1.0);
  EXPECT_EQ(t.direct_credit(1, 0, "a"), 0.0);
  EXPECT_EQ(t.total_credit(0, 1, "a"), 1.0);
  EXPECT_EQ(t.node_credit[0], 1.0);
}

TEST(CreditDistribution, TwoCandidatesSplitCredit) {
  auto g = graph_with_edges(3, {{0, 2}, {1, 2}});
  std::vector<ActionRecord> log{{0, "a", 1}, {1, "a", 2}, {2, "a", 3}};
  auto t = cd_assign_credits(g, log);
  EXPECT_EQ(t.direct_credit(0, 2, "a"), 0.5);
  EXPECT_EQ(t.direct_credit(1, 2, "a"), 0.5);
}

TEST(CreditDistribution, ChainCreditMultiplies) {
  // 0 -> 2, 1 -> 2, 2 -> 3: Gamma(0, 3) = gamma(0,2) * gamma(2,3) = 0.5.
  auto g = graph_with_edges(4, {{0, 2}, {1, 2}, {2, 3}});
  std::vector<ActionRecord> log{{0, "a", 1}, {1, "a", 1}, {2, "a", 2}, {3, "a", 3}};
  auto t = cd_assign_credits(g, log);
  EXPECT_EQ(t.total_credit(0, 3, "a"), 0.5);
  EXPECT_EQ(t.total_credit(2, 3, "a"), 1.0);
  EXPECT_EQ(t.node_credit[0], 1.0);  // 0.5 on node 2 and 0.5 on node 3
}

TEST(CreditDistribution, SimultaneousAndWindowedActionsAreNotCandidates) {
  auto g = graph_with_edges(3, {{0, 2}, {1, 2}});
  std::vector<ActionRecord> log{{0, "a", 1}, {1, "a", 3}, {2, "a", 3}};
  auto t = cd_assign_credits(g, log);
  EXPECT_EQ(t.direct_credit(0, 2, "a"), 1.0);
  EXPECT_EQ(t.direct_credit(1, 2, "a"), 0.0);
  std::vector<ActionRecord> log2{{0, "a", 1}, {1, "a", 8}, {2, "a", 10}};
  auto windowed = cd_assign_credits(g, log2, 5);
  EXPECT_EQ(windowed.direct_credit(0, 2, "a"), 0.0);
  EXPECT_EQ(windowed.direct_credit(1, 2, "a"), 1.0);
}

TEST(CreditDistribution, RepeatedActionKeepsEarliest) {
  auto g = graph_with_edges(2, {{0, 1}});
  std::vector<ActionRecord> log{{1, "a", 5}, {0, "a", 3}, {1, "a", 1}};
  auto t = cd_assign_credits(g, log);
  EXPECT_EQ(t.direct_credit(0, 1, "a"), 0.0);
  EXPECT_EQ(t.actions_per_node[1], 1u);
}

TEST(CreditDistribution, SingleInfluencerRankedFirst) {
  auto g = graph_with_edges(5, {{3, 0}, {3, 1}, {3, 2}, {3, 4}});
  std::vector<ActionRecord> log{{3, "a", 0}, {0, "a", 1}, {1, "a", 2}, {2, "a", 2}, {4, "a", 3}};
  auto r = cd_maximize(cd_assign_credits(g, log), 1);
  EXPECT_EQ(r.seeds, (std::vector<NodeIndex>{3}));
  EXPECT_EQ(r.model, "cd");
  EXPECT_EQ(r.label(), "cd");
}

TEST(CreditDistributionProperty, DirectCreditsSumToOne) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing_support::random_graph(25, 0.15, rng);
    auto t = cd_assign_credits(g, random_log(g, rng, 6));
    for (const auto& trace : t.actions) {
      for (const auto& ev : trace.events) {
        double s = 0.0;
        for (const auto& [v, c] : ev.direct) {
          EXPECT_GT(c, 0.0);
          s += c;
        }
        if (ev.direct.empty()) {
          EXPECT_EQ(s, 0.0);
        } else {
          EXPECT_NEAR(s, 1.0, 1e-12);
        }
      }
    }
    for (double c : t.node_credit) EXPECT_GE(c, 0.0);
  }
}

TEST(CreditDistributionProperty, IncrementalSpreadMatchesOracle) {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing_support::random_graph(20, 0.15, rng);
    auto log = random_log(g, rng, 5);
    auto table = cd_assign_credits(g, log);
    CreditSpread spread(table);
    std::vector<char> in(g.node_count(), 0);
    for (NodeIndex v = 0; v < g.node_count(); v += 3) {
      double before = oracle_spread(g, log, in);
      double gain = spread.gain(v);
      spread.add(v);
      in[v] = 1;
      double after = oracle_spread(g, log, in);
      EXPECT_NEAR(gain, after - before, 1e-9);
      EXPECT_NEAR(spread.value(), after, 1e-9);
    }
  }
}

TEST(CreditDistributionProperty, CelfMatchesNaiveGreedy) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing_support::random_graph(18, 0.2, rng);
    auto log = random_log(g, rng, 4);
    auto r = cd_maximize(cd_assign_credits(g, log), 4);
    std::vector<char> in(g.node_count(), 0);
    std::vector<NodeIndex> expected;
    for (int round = 0; round < 4; ++round) {
      double base = oracle_spread(g, log, in);
      NodeIndex best = 0;
      double best_gain = -1.0;
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (in[v]) continue;
        in[v] = 1;
        double gain = oracle_spread(g, log, in) - base;
        in[v] = 0;
        if (best_gain < 0 || greedy_before(gain, v, best_gain, best)) {
          best = v;
          best_gain = gain;
        }
      }
      in[best] = 1;
      expected.push_back(best);
    }
    EXPECT_EQ(r.seeds, expected);
    for (std::size_t i = 1; i < r.marginal_gains.size(); ++i) EXPECT_LE(r.marginal_gains[i], r.marginal_gains[i - 1] + 1e-9);
  }
}
