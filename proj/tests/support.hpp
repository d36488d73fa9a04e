#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "evinf/belief.hpp"
#include "evinf/graph.hpp"
#include "evinf/measures.hpp"

namespace testing_support {

using namespace evinf;

/// Random normalized BBA with up to `max_focal` focal elements.
inline MassFunction random_bba(const FramePtr& frame, std::mt19937_64& rng, int max_focal = 4) {
  std::uniform_int_distribution<Subset> subset(1, frame->full());
  std::uniform_int_distribution<int> count(1, max_focal);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::vector<FocalElement> focal;
  double total = 0.0;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    focal.push_back({subset(rng), unit(rng)});
    total += focal.back().mass;
  }
  for (auto& fe : focal) fe.mass /= total;
  return MassFunction(frame, std::move(focal));
}

inline OpinionDistribution random_opinion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double a = unit(rng), b = unit(rng);
  if (a > b) std::swap(a, b);
  return OpinionDistribution(a, b - a, 1.0 - b);
}

/// Random simple digraph with node ids "0".."n-1", random opinions and edge
/// BBAs m(I) = b, m(P) = (1 - b) * r, m(Omega) = rest.
inline InfluenceGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GraphBuilder builder;
  for (std::size_t v = 0; v < n; ++v) builder.add_node(std::to_string(v), random_opinion(rng));
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (u == v || unit(rng) >= density) continue;
      double b = unit(rng);
      double p = (1.0 - b) * unit(rng);
      builder.add_edge(u, v, edge_bba(b, p, std::max(0.0, 1.0 - b - p)));
    }
  }
  return builder.build();
}

/// Dense n x n influence matrix with 1 on the diagonal.
inline std::vector<std::vector<double>> dense_influence(const InfluenceGraph& g, MeasureKind kind) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t v = 0; v < n; ++v) w[v][v] = 1.0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) w[g.edge(e).src][g.edge(e).dst] = edge_influence(g, e, kind);
  return w;
}

/// sigma by summing every (u, x, v) product over the dense matrix; optionally
/// capping each non-seed node at 1.
inline double dense_sigma(const std::vector<std::vector<double>>& w, const std::vector<char>& in, bool capped) {
  const std::size_t n = w.size();
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v]) {
      total += 1.0;
      continue;
    }
    double phi = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!in[u]) continue;
      for (std::size_t x = 0; x < n; ++x) phi += w[u][x] * w[x][v];
    }
    total += capped ? std::min(1.0, phi) : phi;
  }
  return total;
}

}  // namespace testing_support
