#pragma once

// Evaluation metrics: detection accuracy, seed-set overlap, opinion summaries
// with normal-approximation confidence intervals, and accumulated activity
// curves over ranked seed lists.

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "evinf/error.hpp"
#include "evinf/graph.hpp"
#include "evinf/graph_io.hpp"
#include "evinf/seed_result.hpp"

namespace evinf {

namespace detail {

inline std::size_t overlap(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
  std::unordered_set<NodeIndex> sa(a.begin(), a.end());
  std::unordered_set<NodeIndex> sb(b.begin(), b.end());
  std::size_t n = 0;
  for (auto v : sa) n += sb.count(v);
  return n;
}

}  // namespace detail

/// |detected ∩ truth| / |truth|.
inline double accuracy(std::span<const NodeIndex> detected, std::span<const NodeIndex> truth) {
  std::unordered_set<NodeIndex> t(truth.begin(), truth.end());
  if (t.empty()) throw Error(ErrorKind::UndefinedMetric, "accuracy needs a non-empty truth set");
  return static_cast<double>(detail::overlap(detected, truth)) / static_cast<double>(t.size());
}

/// |detected ∩ truth| / min(|detected|, |truth|): the share of the achievable
/// hits, for seed budgets smaller than the labeled set.
inline double detection_accuracy(std::span<const NodeIndex> detected, std::span<const NodeIndex> truth) {
  std::unordered_set<NodeIndex> t(truth.begin(), truth.end());
  std::unordered_set<NodeIndex> d(detected.begin(), detected.end());
  if (t.empty() || d.empty()) throw Error(ErrorKind::UndefinedMetric, "detection accuracy needs non-empty sets");
  return static_cast<double>(detail::overlap(detected, truth)) / static_cast<double>(std::min(d.size(), t.size()));
}

inline std::size_t seed_intersection(const SeedResult& a, const SeedResult& b) {
  return detail::overlap(a.seeds, b.seeds);
}

struct MeanWithCi {
  double mean = 0.0;
  double half_width = 0.0;
};

struct OpinionSummary {
  std::size_t count = 0;
  MeanWithCi pos;
  MeanWithCi neg;
  bool empty() const noexcept { return count == 0; }
};

struct OpinionReport {
  OpinionSummary seeds;
  /// Union of the seeds' out-neighbors.
  OpinionSummary neighbors;
};

namespace detail {

/// Mean and z * s / sqrt(n), s being the population standard deviation.
inline MeanWithCi mean_ci(std::span<const double> xs, double z) {
  if (xs.empty()) return {};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, z * std::sqrt(var) / std::sqrt(static_cast<double>(xs.size()))};
}

inline OpinionSummary summarize(const InfluenceGraph& g, std::span<const NodeIndex> nodes, double z) {
  std::vector<double> pos, neg;
  for (auto v : nodes) {
    pos.push_back(g.node(v).opinion.pos());
    neg.push_back(g.node(v).opinion.neg());
  }
  return {nodes.size(), mean_ci(pos, z), mean_ci(neg, z)};
}

}  // namespace detail

/// Two-sided normal quantile for `confidence` in (0, 1).
inline double normal_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error(ErrorKind::InvalidArgument, "confidence must lie in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
}

inline OpinionReport opinion_report(const InfluenceGraph& g, std::span<const NodeIndex> seeds,
                                    double confidence = 0.95) {
  if (seeds.empty()) throw Error(ErrorKind::EmptyReport, "opinion report needs at least one seed");
  const double z = normal_z(confidence);
  std::vector<NodeIndex> unique(seeds.begin(), seeds.end());
  for (auto v : unique) g.check_node(v);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<NodeIndex> neighbors;
  for (auto u : unique) {
    for (EdgeIndex e : g.out_edges(u)) neighbors.push_back(g.edge(e).dst);
  }
  std::sort(neighbors.begin(), neighbors.end());
  neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
  return {detail::summarize(g, unique, z), detail::summarize(g, neighbors, z)};
}

struct CurvePoint {
  std::size_t rank = 0;
  NodeIndex node = 0;
  NodeMetrics cumulative;
};

struct CurveTable {
  std::vector<CurvePoint> points;
  std::vector<std::string> warnings;
};

/// Prefix sums of follow/mention/retweet/tweet counts over the ranked seeds.
/// Seeds without a metrics row count as zero and add a warning.
inline CurveTable accumulated_curves(const InfluenceGraph& g, const SeedResult& seeds,
                                     const std::map<std::string, NodeMetrics>& metrics) {
  CurveTable table;
  NodeMetrics sum;
  for (std::size_t i = 0; i < seeds.seeds.size(); ++i) {
    NodeIndex v = seeds.seeds[i];
    const auto& id = g.node(v).id;
    auto it = metrics.find(id);
    if (it == metrics.end()) {
      table.warnings.push_back("no metrics for node '" + id + "'; counted as zero");
    } else {
      sum.follow += it->second.follow;
      sum.mention += it->second.mention;
      sum.retweet += it->second.retweet;
      sum.tweet += it->second.tweet;
    }
    table.points.push_back({i + 1, v, sum});
  }
  return table;
}

}  // namespace evinf
