#pragma once

// Opinion-based Cascading (OC) baseline: signed node opinions Op(v), linear
// threshold activation, opinion updates from active in-neighbors, and seed
// selection by potential marginal gain (PMG) after pruning weak candidates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "evinf/celf.hpp"
#include "evinf/graph.hpp"
#include "evinf/seed_result.hpp"

namespace evinf {

inline constexpr double kThresholdFloor = 1e-6;

struct OcState {
  std::vector<double> opinion;    // Op(v)
  std::vector<char> active;
  std::vector<double> threshold;  // theta_v
  std::vector<double> weight;     // w(u,v), indexed by EdgeIndex
};

struct OcOptions {
  /// Fraction of nodes with the smallest initial PMG dropped before selection.
  double prune_fraction = 0.5;
  std::uint64_t rng_seed = 1;
};

/// Op(v) = Pr(Pos) - Pr(Neg); theta_v ~ U(0,1) from `rng_seed`; w(u,v) is the
/// edge's m(I) scaled so the weights entering each node sum to at most 1.
inline OcState oc_init(const InfluenceGraph& g, std::uint64_t rng_seed = 1) {
  OcState s;
  s.opinion.resize(g.node_count());
  s.active.assign(g.node_count(), 0);
  s.threshold.resize(g.node_count());
  s.weight.resize(g.edge_count());
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    s.opinion[v] = g.node(v).opinion.pos() - g.node(v).opinion.neg();
    s.threshold[v] = unit(rng);
    double total = 0.0;
    for (EdgeIndex e : g.in_edges(v)) total += g.edge(e).influence;
    for (EdgeIndex e : g.in_edges(v)) s.weight[e] = g.edge(e).influence / std::max(1.0, total);
  }
  return s;
}

inline double oc_pmg(const OcState& state, const InfluenceGraph& g, NodeIndex v) {
  g.check_node(v);
  const double op_v = state.opinion[v];
  double pmg = op_v;
  for (EdgeIndex e : g.out_edges(v)) {
    NodeIndex u = g.edge(e).dst;
    double w = state.weight[e];
    double term = state.opinion[u] + op_v * w;
    if (state.active[u]) {
      pmg += term;
    } else {
      double theta = state.threshold[u] > 0.0 ? state.threshold[u] : kThresholdFloor;
      pmg += (w / theta) * term;
    }
  }
  return pmg;
}

/// One diffusion round: activation and opinion updates both read the state
/// as it was before the round.
inline OcState oc_step(const OcState& state, const InfluenceGraph& g) {
  OcState next = state;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    double pressure = 0.0;
    double shift = 0.0;
    bool any_active = false;
    for (EdgeIndex e : g.in_edges(v)) {
      NodeIndex u = g.edge(e).src;
      if (!state.active[u]) continue;
      any_active = true;
      pressure += state.weight[e];
      shift += state.opinion[u] * state.weight[e];
    }
    if (!any_active) continue;
    if (!state.active[v] && pressure >= state.threshold[v]) next.active[v] = 1;
    next.opinion[v] = state.opinion[v] + shift;
  }
  return next;
}

inline SeedResult oc_maximize(const InfluenceGraph& g, std::size_t k, const OcOptions& options = {}) {
  if (!(options.prune_fraction >= 0.0 && options.prune_fraction <= 1.0)) {
    throw Error(ErrorKind::Config, "prune fraction must lie in [0, 1], got " + std::to_string(options.prune_fraction));
  }
  auto start = std::chrono::steady_clock::now();
  SeedResult result;
  result.model = "oc";
  result.requested_k = k;
  const std::size_t n = g.node_count();
  if (k > n) {
    result.warnings.push_back("k = " + std::to_string(k) + " exceeds |V| = " + std::to_string(n) + "; truncated");
    k = n;
  }
  if (k == 0) return result;

  OcState state = oc_init(g, options.rng_seed);

  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::vector<double> initial(n);
  for (NodeIndex v = 0; v < n; ++v) initial[v] = oc_pmg(state, g, v);
  std::sort(order.begin(), order.end(),
            [&](NodeIndex a, NodeIndex b) { return greedy_before(initial[a], a, initial[b], b); });
  auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * (1.0 - options.prune_fraction)));
  keep = std::clamp(keep, k, n);
  std::vector<NodeIndex> candidates(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  std::sort(candidates.begin(), candidates.end());

  std::vector<char> selected(n, 0);
  double running = 0.0;
  while (result.seeds.size() < k) {
    // Prefer candidates the cascade has not reached yet.
    bool any_inactive = std::any_of(candidates.begin(), candidates.end(),
                                    [&](NodeIndex v) { return !selected[v] && !state.active[v]; });
    std::optional<NodeIndex> best;
    double best_pmg = 0.0;
    for (NodeIndex v : candidates) {
      if (selected[v] || (any_inactive && state.active[v])) continue;
      double p = oc_pmg(state, g, v);
      if (!best || greedy_before(p, v, best_pmg, *best)) {
        best = v;
        best_pmg = p;
      }
    }
    selected[*best] = 1;
    state.active[*best] = 1;
    running += best_pmg;
    result.seeds.push_back(*best);
    result.marginal_gains.push_back(best_pmg);
    result.sigma_values.push_back(running);
    state = oc_step(state, g);
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace evinf
