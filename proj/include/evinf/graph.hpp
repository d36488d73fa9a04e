#pragma once

// Directed social graph with per-node opinion state and per-edge influence
// BBAs over Omega = {I, P}. Built once through GraphBuilder, then read-only.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evinf/belief.hpp"
#include "evinf/error.hpp"
#include "evinf/opinion.hpp"

namespace evinf {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

struct IndicatorBBA {
  std::string name;
  MassFunction bba;
};

/// Linear-discount indicator mapping: m({I}) = x(1-g), m({P}) = (1-x)(1-g), m(Omega) = g.
inline IndicatorBBA indicator_from_value(double x, double discount, std::string name = {}) {
  if (!(x >= 0.0 && x <= 1.0) || !(discount >= 0.0 && discount <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "indicator value and discount must lie in [0,1]");
  }
  const auto& omega = influence_frame();
  return {std::move(name),
          MassFunction(omega, {{omega->singleton("I"), x * (1.0 - discount)},
                               {omega->singleton("P"), (1.0 - x) * (1.0 - discount)},
                               {omega->full(), discount}})};
}

/// Fuses the indicator BBAs of one edge with Dempster's rule.
inline MassFunction edge_influence_bba(std::span<const IndicatorBBA> indicators) {
  if (indicators.empty()) throw Error(ErrorKind::NoIndicators, "edge has no influence indicators");
  for (const auto& ind : indicators) {
    if (!same_frame(ind.bba.frame(), influence_frame())) {
      throw Error(ErrorKind::FrameMismatch, "indicator '" + ind.name + "' is not defined on {I,P}");
    }
  }
  MassFunction acc = indicators.front().bba;
  for (std::size_t i = 1; i < indicators.size(); ++i) acc = dempster_combine(acc, indicators[i].bba);
  return acc;
}

inline MassFunction edge_bba(double m_i, double m_p, double m_ip) {
  const auto& omega = influence_frame();
  return MassFunction(omega, {{omega->singleton("I"), m_i}, {omega->singleton("P"), m_p}, {omega->full(), m_ip}});
}

struct Node {
  std::string id;
  OpinionDistribution opinion;
  MassFunction opinion_bba = MassFunction::vacuous(opinion_frame());
  double belief_pos = 0.0;  // m_u^Theta({Pos})
  double belief_neg = 0.0;  // m_u^Theta({Neg})
};

struct Edge {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  MassFunction bba = MassFunction::vacuous(influence_frame());
  double influence = 0.0;  // m_(u,v)^Omega({I})
  std::vector<double> indicators;
};

class InfluenceGraph {
 public:
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Node& node(NodeIndex v) const { return nodes_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Edges leaving `u`, ordered by destination index.
  std::span<const EdgeIndex> out_edges(NodeIndex u) const { return out_.at(u); }
  /// Edges entering `v`, ordered by source index.
  std::span<const EdgeIndex> in_edges(NodeIndex v) const { return in_.at(v); }

  std::size_t out_degree(NodeIndex u) const { return out_.at(u).size(); }
  std::size_t in_degree(NodeIndex v) const { return in_.at(v).size(); }

  std::optional<NodeIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeIndex index_of(std::string_view id) const {
    auto v = find(id);
    if (!v) throw Error(ErrorKind::Lookup, "unknown node '" + std::string(id) + "'");
    return *v;
  }

  void check_node(NodeIndex v) const {
    if (v >= nodes_.size()) throw Error(ErrorKind::Lookup, "node index " + std::to_string(v) + " out of range");
  }

  std::optional<EdgeIndex> find_edge(NodeIndex u, NodeIndex v) const {
    check_node(u);
    check_node(v);
    const auto& out = out_[u];
    auto it = std::lower_bound(out.begin(), out.end(), v,
                               [this](EdgeIndex e, NodeIndex target) { return edges_[e].dst < target; });
    if (it != out.end() && edges_[*it].dst == v) return *it;
    return std::nullopt;
  }

 private:
  friend class GraphBuilder;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::unordered_map<std::string, NodeIndex> index_;
};

/// Collects nodes and edges, validates them, and produces an immutable graph.
/// Node ids map to dense indexes in insertion order.
class GraphBuilder {
 public:
  explicit GraphBuilder(AlphaMapping mapping = AlphaMapping::Weight) : mapping_(mapping) {}

  NodeIndex add_node(std::string id, OpinionDistribution opinion = OpinionDistribution::neutral()) {
    if (id.empty()) throw Error(ErrorKind::InvalidArgument, "empty node id");
    auto [it, inserted] = index_.emplace(id, static_cast<NodeIndex>(nodes_.size()));
    if (!inserted) throw Error(ErrorKind::InvalidArgument, "duplicate node '" + id + "'");
    nodes_.push_back({std::move(id), opinion});
    return it->second;
  }

  bool has_node(std::string_view id) const { return index_.contains(std::string(id)); }

  std::optional<NodeIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void set_opinion(NodeIndex v, OpinionDistribution opinion) { nodes_.at(v).opinion = opinion; }
  const OpinionDistribution& opinion(NodeIndex v) const { return nodes_.at(v).opinion; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  void add_edge(std::string_view src, std::string_view dst, MassFunction bba, std::vector<double> indicators = {}) {
    auto s = find(src);
    auto d = find(dst);
    if (!s || !d) {
      throw Error(ErrorKind::Referential,
                  "edge " + std::string(src) + "->" + std::string(dst) + " references an unknown node");
    }
    add_edge(*s, *d, std::move(bba), std::move(indicators));
  }

  void add_edge(NodeIndex src, NodeIndex dst, MassFunction bba, std::vector<double> indicators = {}) {
    if (src >= nodes_.size() || dst >= nodes_.size()) {
      throw Error(ErrorKind::Referential, "edge endpoint index out of range");
    }
    if (src == dst) throw Error(ErrorKind::InvalidArgument, "self-loop on '" + nodes_[src].id + "'");
    if (!same_frame(bba.frame(), influence_frame())) {
      throw Error(ErrorKind::FrameMismatch, "edge BBA must be defined on {I,P}");
    }
    Edge e;
    e.src = src;
    e.dst = dst;
    e.influence = bba.mass(influence_frame()->singleton("I"));
    e.bba = std::move(bba);
    e.indicators = std::move(indicators);
    edges_.push_back(std::move(e));
  }

  /// Counts opinion BBAs that hit total conflict under the literal alpha
  /// mapping and were replaced by the vacuous BBA.
  std::size_t conflict_fallbacks() const noexcept { return conflict_fallbacks_; }

  InfluenceGraph build() {
    InfluenceGraph g;
    const Subset pos = opinion_frame()->singleton("Pos");
    const Subset neg = opinion_frame()->singleton("Neg");
    for (auto& n : nodes_) {
      try {
        n.opinion_bba = opinion_to_bba(n.opinion, mapping_);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TotalConflict) throw;
        n.opinion_bba = MassFunction::vacuous(opinion_frame());
        ++conflict_fallbacks_;
      }
      n.belief_pos = n.opinion_bba.mass(pos);
      n.belief_neg = n.opinion_bba.mass(neg);
    }

    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.src, a.dst) < std::pair(b.src, b.dst); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst) {
        throw Error(ErrorKind::InvalidArgument, "duplicate edge " + nodes_[edges_[i].src].id + "->" +
                                                    nodes_[edges_[i].dst].id);
      }
    }

    g.out_.assign(nodes_.size(), {});
    g.in_.assign(nodes_.size(), {});
    for (EdgeIndex e = 0; e < edges_.size(); ++e) g.out_[edges_[e].src].push_back(e);
    // Edges are sorted by (src, dst), so in-lists come out ordered by source.
    for (EdgeIndex e = 0; e < edges_.size(); ++e) g.in_[edges_[e].dst].push_back(e);

    g.nodes_ = std::move(nodes_);
    g.edges_ = std::move(edges_);
    g.index_ = std::move(index_);
    nodes_.clear();
    edges_.clear();
    index_.clear();
    return g;
  }

 private:
  AlphaMapping mapping_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::size_t conflict_fallbacks_ = 0;
};

/// One (user, action, time) tuple of a propagation log.
struct ActionRecord {
  NodeIndex user = 0;
  std::string action;
  std::int64_t time = 0;
};

}  // namespace evinf
