#pragma once

// Monte-Carlo diffusion under the independent cascade (ICM), weighted
// cascade (WC) and linear threshold (LTM) models.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "evinf/error.hpp"
#include "evinf/graph.hpp"

namespace evinf {

enum class CascadeModel { ICM, WC, LTM };

inline CascadeModel parse_cascade_model(std::string_view name) {
  if (name == "icm" || name == "ICM") return CascadeModel::ICM;
  if (name == "wc" || name == "WC") return CascadeModel::WC;
  if (name == "ltm" || name == "LTM") return CascadeModel::LTM;
  throw Error(ErrorKind::Config, "unknown cascade model '" + std::string(name) + "' (expected icm, wc, ltm)");
}

constexpr std::string_view to_string(CascadeModel m) {
  switch (m) {
    case CascadeModel::ICM: return "icm";
    case CascadeModel::WC: return "wc";
    case CascadeModel::LTM: return "ltm";
  }
  return "icm";
}

struct CascadeConfig {
  CascadeModel model = CascadeModel::ICM;
  /// Same p(u,v) (ICM) or w(u,v) (LTM) on every edge; otherwise m(I) of the edge.
  std::optional<double> uniform_probability;
  std::size_t monte_carlo_runs = 1000;
  std::uint64_t rng_seed = 1;
  /// WC: p(u,v) = 1/in-degree(v) instead of 1/out-degree(u).
  bool wc_target_indegree = false;
  /// LTM: scale each node's incoming weights down to sum to at most 1.
  /// When off, an infeasible weight sum is a config error.
  bool normalize_ltm_weights = true;
  unsigned threads = 1;
};

/// Outcome of one simulation: active flags and the active count after each
/// round (round 0 is the seed set).
struct CascadeTrace {
  std::vector<char> active;
  std::vector<std::size_t> active_per_round;

  std::size_t final_count() const { return active_per_round.empty() ? 0 : active_per_round.back(); }
};

/// Per-edge probability (ICM/WC) or weight (LTM), validated against `cfg`.
inline std::vector<double> cascade_edge_values(const InfluenceGraph& g, const CascadeConfig& cfg) {
  if (cfg.monte_carlo_runs == 0) throw Error(ErrorKind::Config, "monte_carlo_runs must be at least 1");
  if (cfg.uniform_probability && !(*cfg.uniform_probability >= 0.0 && *cfg.uniform_probability <= 1.0)) {
    throw Error(ErrorKind::Config, "edge probability must lie in [0,1]");
  }
  std::vector<double> values(g.edge_count());
  for (EdgeIndex e = 0; e < values.size(); ++e) {
    const Edge& edge = g.edge(e);
    switch (cfg.model) {
      case CascadeModel::WC:
        values[e] = cfg.wc_target_indegree ? 1.0 / static_cast<double>(g.in_degree(edge.dst))
                                           : 1.0 / static_cast<double>(g.out_degree(edge.src));
        break;
      case CascadeModel::ICM:
      case CascadeModel::LTM:
        values[e] = cfg.uniform_probability.value_or(edge.influence);
        break;
    }
  }
  if (cfg.model == CascadeModel::LTM) {
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      double total = 0.0;
      for (EdgeIndex e : g.in_edges(v)) total += values[e];
      if (total <= 1.0 + 1e-12) continue;
      if (!cfg.normalize_ltm_weights) {
        throw Error(ErrorKind::Config, "LTM weights into '" + g.node(v).id + "' sum to " + std::to_string(total));
      }
      for (EdgeIndex e : g.in_edges(v)) values[e] /= total;
    }
  }
  return values;
}

/// Independent RNG stream for run `run` of a configuration.
inline std::mt19937_64 cascade_rng(std::uint64_t seed, std::size_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(static_cast<std::uint64_t>(run) >> 32)};
  return std::mt19937_64(seq);
}

inline CascadeTrace simulate_cascade(const InfluenceGraph& g, std::span<const NodeIndex> seeds,
                                     const CascadeConfig& cfg, std::span<const double> edge_values,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CascadeTrace trace;
  trace.active.assign(g.node_count(), 0);
  std::vector<NodeIndex> frontier;
  for (auto s : seeds) {
    g.check_node(s);
    if (!trace.active[s]) {
      trace.active[s] = 1;
      frontier.push_back(s);
    }
  }
  std::size_t count = frontier.size();
  trace.active_per_round.push_back(count);

  if (cfg.model == CascadeModel::LTM) {
    std::vector<double> threshold(g.node_count());
    for (auto& t : threshold) t = unit(rng);
    std::vector<double> pressure(g.node_count(), 0.0);
    while (!frontier.empty()) {
      std::vector<NodeIndex> next;
      for (NodeIndex u : frontier) {
        for (EdgeIndex e : g.out_edges(u)) {
          NodeIndex v = g.edge(e).dst;
          if (trace.active[v]) continue;
          pressure[v] += edge_values[e];
        }
      }
      for (NodeIndex u : frontier) {
        for (EdgeIndex e : g.out_edges(u)) {
          NodeIndex v = g.edge(e).dst;
          if (!trace.active[v] && pressure[v] >= threshold[v]) {
            trace.active[v] = 1;
            next.push_back(v);
          }
        }
      }
      if (next.empty()) break;
      count += next.size();
      trace.active_per_round.push_back(count);
      frontier = std::move(next);
    }
    return trace;
  }

  // ICM / WC: every newly active u gets one attempt per inactive out-neighbor.
  while (!frontier.empty()) {
    std::vector<NodeIndex> next;
    for (NodeIndex u : frontier) {
      for (EdgeIndex e : g.out_edges(u)) {
        NodeIndex v = g.edge(e).dst;
        if (trace.active[v]) continue;
        if (unit(rng) < edge_values[e]) {
          trace.active[v] = 1;
          next.push_back(v);
        }
      }
    }
    if (next.empty()) break;
    count += next.size();
    trace.active_per_round.push_back(count);
    frontier = std::move(next);
  }
  return trace;
}

/// Final active-set size of every run, in run order.
inline std::vector<std::size_t> cascade_samples(const InfluenceGraph& g, std::span<const NodeIndex> seeds,
                                                const CascadeConfig& cfg) {
  const auto values = cascade_edge_values(g, cfg);
  std::vector<std::size_t> sizes(cfg.monte_carlo_runs);
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      auto rng = cascade_rng(cfg.rng_seed, r);
      sizes[r] = simulate_cascade(g, seeds, cfg, values, rng).final_count();
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(sizes.size())));
  if (threads == 1) {
    run_range(0, sizes.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (sizes.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(sizes.size(), lo + chunk);
      if (lo < hi) workers.emplace_back(run_range, lo, hi);
    }
  }
  return sizes;
}

/// Monte-Carlo estimate of sigma_M(S): mean final active-set size.
inline double cascade_spread(const InfluenceGraph& g, std::span<const NodeIndex> seeds, const CascadeConfig& cfg) {
  auto sizes = cascade_samples(g, seeds, cfg);
  double total = 0.0;
  for (auto s : sizes) total += static_cast<double>(s);
  return total / static_cast<double>(sizes.size());
}

}  // namespace evinf
