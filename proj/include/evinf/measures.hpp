#pragma once

// Per-edge influence values: the plain evidential measure Inf(u,v) = m(I)
// and the opinion-weighted measures of the three marketing scenarios.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evinf/error.hpp"
#include "evinf/graph.hpp"

namespace evinf {

enum class MeasureKind {
  Plain,
  Scenario1Prob,
  Scenario1Belief,
  Scenario2Prob,
  Scenario2Belief,
  Scenario3Prob,
  Scenario3Belief,
};

inline constexpr std::array<MeasureKind, 7> kAllMeasures = {
    MeasureKind::Plain,         MeasureKind::Scenario1Prob,   MeasureKind::Scenario1Belief,
    MeasureKind::Scenario2Prob, MeasureKind::Scenario2Belief, MeasureKind::Scenario3Prob,
    MeasureKind::Scenario3Belief,
};

constexpr std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Plain: return "plain";
    case MeasureKind::Scenario1Prob: return "s1-prob";
    case MeasureKind::Scenario1Belief: return "s1-belief";
    case MeasureKind::Scenario2Prob: return "s2-prob";
    case MeasureKind::Scenario2Belief: return "s2-belief";
    case MeasureKind::Scenario3Prob: return "s3-prob";
    case MeasureKind::Scenario3Belief: return "s3-belief";
  }
  return "plain";
}

inline std::optional<MeasureKind> try_parse_measure(std::string_view name) {
  for (auto kind : kAllMeasures) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

inline MeasureKind parse_measure(std::string_view name) {
  if (auto kind = try_parse_measure(name)) return *kind;
  throw Error(ErrorKind::Usage, "unknown measure '" + std::string(name) +
                                    "' (expected plain, s1-prob, s1-belief, s2-prob, s2-belief, s3-prob, s3-belief)");
}

constexpr bool uses_belief(MeasureKind kind) {
  return kind == MeasureKind::Scenario1Belief || kind == MeasureKind::Scenario2Belief ||
         kind == MeasureKind::Scenario3Belief;
}

/// Influence carried by edge `e` under `kind`.
inline double edge_influence(const InfluenceGraph& g, EdgeIndex e, MeasureKind kind) {
  const Edge& edge = g.edge(e);
  const Node& u = g.node(edge.src);
  const Node& v = g.node(edge.dst);
  const double b = edge.influence;
  switch (kind) {
    case MeasureKind::Plain: return b;
    case MeasureKind::Scenario1Prob: return u.opinion.pos() * b;
    case MeasureKind::Scenario1Belief: return u.belief_pos * b;
    case MeasureKind::Scenario2Prob: return u.opinion.pos() * b * (1.0 - v.opinion.neg());
    case MeasureKind::Scenario2Belief: return u.belief_pos * b * (1.0 - v.belief_neg);
    case MeasureKind::Scenario3Prob: return u.opinion.pos() * b * (1.0 - v.opinion.pos());
    case MeasureKind::Scenario3Belief: return u.belief_pos * b * (1.0 - v.belief_pos);
  }
  return 0.0;
}

/// Inf(u,v) under `kind`; 0 when (u,v) is not an edge.
inline double influence(const InfluenceGraph& g, NodeIndex u, NodeIndex v, MeasureKind kind) {
  if (u == v) throw Error(ErrorKind::InvalidArgument, "influence of a node on itself is not an edge measure");
  auto e = g.find_edge(u, v);
  return e ? edge_influence(g, *e, kind) : 0.0;
}

inline double influence(const InfluenceGraph& g, std::string_view u, std::string_view v, MeasureKind kind) {
  return influence(g, g.index_of(u), g.index_of(v), kind);
}

/// All edge values for one measure, indexed by EdgeIndex.
inline std::vector<double> edge_influences(const InfluenceGraph& g, MeasureKind kind) {
  std::vector<double> out(g.edge_count());
  for (EdgeIndex e = 0; e < out.size(); ++e) out[e] = edge_influence(g, e, kind);
  return out;
}

}  // namespace evinf
