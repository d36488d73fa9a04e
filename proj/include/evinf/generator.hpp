#pragma once

// Synthetic networks with known influencer labels.
//
// Influencers are the nodes with at least `influencer_outdegree_threshold`
// out-links. Their out-edges draw m(I) from U(min_influence, 1), all other
// edges from U(0, min_influence). A random share of the influencers becomes
// positive (Pr(Pos) ~ U(min_pos_opinion, 1)) and is split in two halves:
// out-neighbors of the first half receive Pr(Pos) ~ U(min_neighbor_pos, 1),
// out-neighbors of the second half Pr(Neg) ~ U(min_neighbor_neg, 1).
// Everyone else draws Pr(Pos) ~ U(0, min_pos_opinion).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "evinf/error.hpp"
#include "evinf/graph.hpp"

namespace evinf {

/// Directed preferential attachment on a fixed node set: each new edge picks
/// its source with probability proportional to out-degree + out_smoothing and
/// its target proportional to in-degree + in_smoothing.
struct TopologySpec {
  std::size_t nodes = 1010;
  std::size_t edges = 6906;
  double out_smoothing = 1.6;
  double in_smoothing = 1.0;
};

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

struct GeneratorParams {
  TopologySpec topology;
  /// When non-empty, used instead of a synthetic topology (node count from
  /// `base_nodes`).
  EdgeList base_edges;
  std::size_t base_nodes = 0;
  std::size_t influencer_outdegree_threshold = 15;
  double min_influence = 0.5;
  double min_pos_opinion = 0.8;
  double min_neighbor_pos = 0.3;
  double min_neighbor_neg = 0.8;
  /// Share of influencers labeled positive.
  double positive_fraction = 0.5;
  std::uint64_t rng_seed = 1;
};

struct GroundTruth {
  std::vector<NodeIndex> influencers;
  std::vector<NodeIndex> positive_influencers;
  std::vector<NodeIndex> pos_influencing_pos;
  std::vector<NodeIndex> pos_influencing_neg;
};

struct GeneratedNetwork {
  InfluenceGraph graph;
  GroundTruth truth;
};

namespace detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  // lo + (hi - lo) * u keeps degenerate intervals exact (U(1,1) == 1).
  double u = std::generate_canonical<double, 53>(rng);
  return lo + (hi - lo) * u;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline OpinionDistribution opinion_with_pos(std::mt19937_64& rng, double pos) {
  double neg = (1.0 - pos) * uniform(rng, 0.0, 1.0);
  return OpinionDistribution(pos, neg, std::max(0.0, 1.0 - pos - neg));
}

inline OpinionDistribution opinion_with_neg(std::mt19937_64& rng, double neg) {
  double pos = (1.0 - neg) * uniform(rng, 0.0, 1.0);
  return OpinionDistribution(pos, neg, std::max(0.0, 1.0 - pos - neg));
}

inline void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Config, std::string(name) + " must lie in [0,1]");
}

}  // namespace detail

inline EdgeList generate_topology(const TopologySpec& spec, std::mt19937_64& rng) {
  const std::size_t n = spec.nodes;
  if (n < 2) throw Error(ErrorKind::Config, "topology needs at least 2 nodes");
  if (spec.edges > n * (n - 1)) throw Error(ErrorKind::Config, "more edges requested than a simple digraph allows");
  if (!(spec.out_smoothing > 0.0) || !(spec.in_smoothing > 0.0)) {
    throw Error(ErrorKind::Config, "smoothing terms must be positive");
  }
  EdgeList edges;
  edges.reserve(spec.edges);
  std::unordered_set<std::uint64_t> seen;
  const double nn = static_cast<double>(n);
  auto draw = [&](bool source) -> NodeIndex {
    double smoothing = source ? spec.out_smoothing : spec.in_smoothing;
    double uniform_mass = nn * smoothing;
    double p_uniform = uniform_mass / (static_cast<double>(edges.size()) + uniform_mass);
    if (edges.empty() || detail::uniform(rng, 0.0, 1.0) < p_uniform) return static_cast<NodeIndex>(detail::pick(rng, n));
    const auto& e = edges[detail::pick(rng, edges.size())];
    return source ? e.first : e.second;
  };
  while (edges.size() < spec.edges) {
    NodeIndex u = draw(true);
    NodeIndex v = draw(false);
    if (u == v) continue;
    auto key = static_cast<std::uint64_t>(u) * n + v;
    if (!seen.insert(key).second) continue;
    edges.emplace_back(u, v);
  }
  return edges;
}

inline GeneratedNetwork generate_network(const GeneratorParams& p) {
  detail::check_unit(p.min_influence, "min_influence");
  detail::check_unit(p.min_pos_opinion, "min_pos_opinion");
  detail::check_unit(p.min_neighbor_pos, "min_neighbor_pos");
  detail::check_unit(p.min_neighbor_neg, "min_neighbor_neg");
  detail::check_unit(p.positive_fraction, "positive_fraction");
  if (p.influencer_outdegree_threshold < 1) throw Error(ErrorKind::Config, "outdegree threshold must be at least 1");

  std::mt19937_64 rng(p.rng_seed);
  EdgeList edges;
  std::size_t n = 0;
  if (!p.base_edges.empty()) {
    edges = p.base_edges;
    n = p.base_nodes;
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) throw Error(ErrorKind::Config, "base edge endpoint outside the node range");
    }
  } else {
    edges = generate_topology(p.topology, rng);
    n = p.topology.nodes;
  }

  std::vector<std::size_t> outdeg(n, 0);
  for (const auto& e : edges) ++outdeg[e.first];
  GroundTruth truth;
  std::vector<char> is_influencer(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    if (outdeg[v] >= p.influencer_outdegree_threshold) {
      truth.influencers.push_back(v);
      is_influencer[v] = 1;
    }
  }
  if (truth.influencers.empty()) {
    throw Error(ErrorKind::Generation, "no node reaches out-degree " + std::to_string(p.influencer_outdegree_threshold));
  }

  std::vector<double> influence(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    influence[i] = is_influencer[edges[i].first] ? detail::uniform(rng, p.min_influence, 1.0)
                                                 : detail::uniform(rng, 0.0, p.min_influence);
  }

  std::vector<NodeIndex> shuffled = truth.influencers;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto positive_count = static_cast<std::size_t>(std::llround(p.positive_fraction * static_cast<double>(shuffled.size())));
  if (p.positive_fraction > 0.0) positive_count = std::max<std::size_t>(positive_count, 1);
  shuffled.resize(positive_count);
  const std::size_t first_half = (positive_count + 1) / 2;

  std::vector<OpinionDistribution> opinion(n);
  for (NodeIndex v = 0; v < n; ++v) opinion[v] = detail::opinion_with_pos(rng, detail::uniform(rng, 0.0, p.min_pos_opinion));
  for (NodeIndex v : shuffled) opinion[v] = detail::opinion_with_pos(rng, detail::uniform(rng, p.min_pos_opinion, 1.0));

  std::vector<std::vector<NodeIndex>> out(n);
  for (const auto& [u, v] : edges) out[u].push_back(v);
  for (std::size_t i = 0; i < shuffled.size(); ++i) {
    const bool positive_side = i < first_half;
    auto targets = out[shuffled[i]];
    std::sort(targets.begin(), targets.end());
    for (NodeIndex w : targets) {
      if (is_influencer[w]) continue;  // influencer labels keep their own opinion
      opinion[w] = positive_side
                       ? detail::opinion_with_pos(rng, detail::uniform(rng, p.min_neighbor_pos, 1.0))
                       : detail::opinion_with_neg(rng, detail::uniform(rng, p.min_neighbor_neg, 1.0));
    }
  }

  truth.positive_influencers = shuffled;
  truth.pos_influencing_pos.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(first_half));
  truth.pos_influencing_neg.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(first_half), shuffled.end());
  std::sort(truth.positive_influencers.begin(), truth.positive_influencers.end());
  std::sort(truth.pos_influencing_pos.begin(), truth.pos_influencing_pos.end());
  std::sort(truth.pos_influencing_neg.begin(), truth.pos_influencing_neg.end());

  GraphBuilder builder;
  for (NodeIndex v = 0; v < n; ++v) builder.add_node(std::to_string(v), opinion[v]);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    builder.add_edge(edges[i].first, edges[i].second, edge_bba(influence[i], 1.0 - influence[i], 0.0));
  }
  return {builder.build(), std::move(truth)};
}

inline nlohmann::ordered_json to_json(const GroundTruth& t, const InfluenceGraph& g) {
  auto ids = [&g](const std::vector<NodeIndex>& set) {
    auto arr = nlohmann::ordered_json::array();
    for (auto v : set) arr.push_back(g.node(v).id);
    return arr;
  };
  nlohmann::ordered_json j;
  j["influencers"] = ids(t.influencers);
  j["positive_influencers"] = ids(t.positive_influencers);
  j["pos_influencing_pos"] = ids(t.pos_influencing_pos);
  j["pos_influencing_neg"] = ids(t.pos_influencing_neg);
  return j;
}

}  // namespace evinf
