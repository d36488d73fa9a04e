#pragma once

// Influence-spread objective. Phi(S, v) is the influence given to a seed set
// S for influencing v:
//
//   Phi(S, v) = 1                                           if v in S
//             = sum_{u in S} sum_{x in Din(v) + {v}} Inf(u,x) Inf(x,v)   otherwise
//
// with Inf(w,w) = 1 and Inf = 0 off the edge set; sigma(S) = sum_v Phi(S, v).
// Through x = u and x = v a direct edge (u,v) contributes twice; see
// SpreadOptions::dedupe_direct.

#include <algorithm>
#include <span>
#include <vector>

#include "evinf/graph.hpp"
#include "evinf/measures.hpp"

namespace evinf {

enum class PhiMode {
  /// The raw double sum. Submodular, but not monotone: adding x to S drops
  /// Phi(S, x) to 1 even when x had accumulated more than 1.
  Literal,
  /// Phi(S, v) = min(1, sum) for v outside S. Monotone and submodular.
  Capped,
};

struct SpreadOptions {
  PhiMode phi_mode = PhiMode::Literal;
  /// Drop the x = v term so a direct edge counts once.
  bool dedupe_direct = false;
};

namespace detail {

inline double cap(double a, PhiMode mode) { return mode == PhiMode::Capped ? std::min(1.0, a) : a; }

struct SeedSet {
  std::vector<char> in;
  std::vector<NodeIndex> members;  // ascending, duplicates removed
};

inline SeedSet membership(const InfluenceGraph& g, std::span<const NodeIndex> seeds) {
  SeedSet s{std::vector<char>(g.node_count(), 0), {}};
  for (auto u : seeds) {
    g.check_node(u);
    s.in[u] = 1;
  }
  for (NodeIndex u = 0; u < s.in.size(); ++u) {
    if (s.in[u]) s.members.push_back(u);
  }
  return s;
}

inline double inf_or_self(const InfluenceGraph& g, NodeIndex a, NodeIndex b, MeasureKind kind) {
  return a == b ? 1.0 : influence(g, a, b, kind);
}

inline double phi_with(const InfluenceGraph& g, const SeedSet& seeds, NodeIndex v, MeasureKind kind,
                       const SpreadOptions& opts) {
  if (seeds.in[v]) return 1.0;
  double total = 0.0;
  for (NodeIndex u : seeds.members) {
    for (EdgeIndex e : g.in_edges(v)) {
      NodeIndex x = g.edge(e).src;
      total += inf_or_self(g, u, x, kind) * edge_influence(g, e, kind);
    }
    if (!opts.dedupe_direct) total += inf_or_self(g, u, v, kind);  // x = v, Inf(v,v) = 1
  }
  return cap(total, opts.phi_mode);
}

}  // namespace detail

/// Direct evaluation of Phi(S, v) by walking Din(v).
inline double phi(const InfluenceGraph& g, std::span<const NodeIndex> seeds, NodeIndex v, MeasureKind kind,
                  const SpreadOptions& opts = {}) {
  g.check_node(v);
  return detail::phi_with(g, detail::membership(g, seeds), v, kind, opts);
}

/// Direct evaluation of sigma(S) = sum over all v of Phi(S, v).
inline double sigma(const InfluenceGraph& g, std::span<const NodeIndex> seeds, MeasureKind kind,
                    const SpreadOptions& opts = {}) {
  auto in = detail::membership(g, seeds);
  double total = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) total += detail::phi_with(g, in, v, kind, opts);
  return total;
}

/// Incremental sigma for greedy selection. Each candidate u carries the list
/// of (v, f(u,v)) with f(u,v) = sum_{x in Din(v)+{v}} Inf(u,x) Inf(x,v), so
/// Phi(S, v) for v outside S is the (capped) sum of f(u,v) over seeds u.
/// Adding u only touches nodes within two hops of it.
class SpreadEvaluator {
 public:
  SpreadEvaluator(const InfluenceGraph& g, MeasureKind kind, SpreadOptions opts = {})
      : mode_(opts.phi_mode), contrib_(g.node_count()), acc_(g.node_count(), 0.0), in_(g.node_count(), 0) {
    const auto inf = edge_influences(g, kind);
    std::vector<std::pair<NodeIndex, double>> raw;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      raw.clear();
      for (EdgeIndex e1 : g.out_edges(u)) {
        NodeIndex x = g.edge(e1).dst;
        raw.emplace_back(x, inf[e1]);  // x = u: Inf(u,u) Inf(u,v)
        if (!opts.dedupe_direct) raw.emplace_back(x, inf[e1]);  // x = v: Inf(u,v) Inf(v,v)
        for (EdgeIndex e2 : g.out_edges(x)) {
          NodeIndex v = g.edge(e2).dst;
          if (v != u) raw.emplace_back(v, inf[e1] * inf[e2]);
        }
      }
      std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      auto& list = contrib_[u];
      for (const auto& [v, w] : raw) {
        if (!list.empty() && list.back().first == v) {
          list.back().second += w;
        } else {
          list.emplace_back(v, w);
        }
      }
    }
  }

  std::size_t node_count() const noexcept { return in_.size(); }
  bool contains(NodeIndex v) const { return in_.at(v) != 0; }
  const std::vector<NodeIndex>& seeds() const noexcept { return seeds_; }

  double phi(NodeIndex v) const { return in_.at(v) ? 1.0 : detail::cap(acc_[v], mode_); }

  /// sigma(S + {x}) - sigma(S).
  double gain(NodeIndex x) const {
    if (in_.at(x)) return 0.0;
    double g = 1.0 - detail::cap(acc_[x], mode_);
    for (const auto& [v, w] : contrib_[x]) {
      if (in_[v]) continue;
      g += detail::cap(acc_[v] + w, mode_) - detail::cap(acc_[v], mode_);
    }
    return g;
  }

  void add(NodeIndex x) {
    if (in_.at(x)) return;
    in_[x] = 1;
    seeds_.push_back(x);
    for (const auto& [v, w] : contrib_[x]) acc_[v] += w;
  }

  /// sigma(S), summed afresh over all nodes.
  double value() const {
    double total = 0.0;
    for (NodeIndex v = 0; v < in_.size(); ++v) total += phi(v);
    return total;
  }

 private:
  PhiMode mode_;
  std::vector<std::vector<std::pair<NodeIndex, double>>> contrib_;
  std::vector<double> acc_;
  std::vector<char> in_;
  std::vector<NodeIndex> seeds_;
};

}  // namespace evinf
