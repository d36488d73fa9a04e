#pragma once

// Credit Distribution baseline. The action log is scanned per action in time
// order; when u performs action a, every in-neighbor v of u that performed a
// earlier (within the time window) is a candidate influencer and receives the
// direct credit gamma_{v,u}(a) = 1 / #candidates. Total credit follows the
// influencer chains:
//
//   Gamma_{S,u}(a) = 1                                       if u in S
//                  = sum_{w in cand(u)} Gamma_{S,w}(a) gamma_{w,u}(a)   otherwise
//
// and the spread of S is sum_u (1/A_u) sum_a Gamma_{S,u}(a), A_u being the
// number of actions u performed.

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "evinf/celf.hpp"
#include "evinf/graph.hpp"
#include "evinf/seed_result.hpp"

namespace evinf {

struct CreditEvent {
  NodeIndex performer;
  std::int64_t time;
  /// (candidate influencer, direct credit)
  std::vector<std::pair<NodeIndex, double>> direct;
};

struct ActionTrace {
  std::string action;
  std::vector<CreditEvent> events;  // ascending time, then node index
};

class CreditTable {
 public:
  std::size_t node_count() const noexcept { return actions_per_node.size(); }

  /// gamma_{v,u}(a); 0 when v is not a candidate influencer of u on a.
  double direct_credit(NodeIndex v, NodeIndex u, std::string_view action) const {
    const auto* trace = find(action);
    if (!trace) return 0.0;
    for (const auto& ev : trace->events) {
      if (ev.performer != u) continue;
      for (const auto& [w, c] : ev.direct) {
        if (w == v) return c;
      }
    }
    return 0.0;
  }

  /// Gamma_{v,u}(a) with v != u.
  double total_credit(NodeIndex v, NodeIndex u, std::string_view action) const {
    const auto* trace = find(action);
    if (!trace || v == u) return 0.0;
    auto gamma = chain_credit(*trace, [v](NodeIndex w) { return w == v; });
    for (std::size_t i = 0; i < trace->events.size(); ++i) {
      if (trace->events[i].performer == u) return gamma[i];
    }
    return 0.0;
  }

  /// Gamma_S over the events of one trace, seeds marked by `in_set`.
  template <class InSet>
  static std::vector<double> chain_credit(const ActionTrace& trace, InSet&& in_set) {
    std::vector<double> gamma(trace.events.size(), 0.0);
    std::unordered_map<NodeIndex, std::size_t> position;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const auto& ev = trace.events[i];
      position.emplace(ev.performer, i);
      if (in_set(ev.performer)) {
        gamma[i] = 1.0;
        continue;
      }
      double total = 0.0;
      for (const auto& [w, c] : ev.direct) total += gamma[position.at(w)] * c;
      gamma[i] = total;
    }
    return gamma;
  }

  const ActionTrace* find(std::string_view action) const {
    for (const auto& t : actions) {
      if (t.action == action) return &t;
    }
    return nullptr;
  }

  std::vector<ActionTrace> actions;          // ordered by action id
  std::vector<std::size_t> actions_per_node;  // A_u
  /// kappa_v = sum_a sum_{u != v} Gamma_{v,u}(a) / A_u
  std::vector<double> node_credit;
};

/// `window` bounds t - t' for a candidate influencer; unset means unbounded.
inline CreditTable cd_assign_credits(const InfluenceGraph& g, std::span<const ActionRecord> log,
                                     std::optional<std::int64_t> window = std::nullopt) {
  CreditTable table;
  table.actions_per_node.assign(g.node_count(), 0);
  table.node_credit.assign(g.node_count(), 0.0);

  std::map<std::string, std::vector<ActionRecord>> by_action;
  for (const auto& rec : log) {
    g.check_node(rec.user);
    by_action[rec.action].push_back(rec);
  }

  for (auto& [action, records] : by_action) {
    std::sort(records.begin(), records.end(), [](const ActionRecord& a, const ActionRecord& b) {
      return std::pair(a.time, a.user) < std::pair(b.time, b.user);
    });
    ActionTrace trace;
    trace.action = action;
    std::unordered_map<NodeIndex, std::int64_t> performed_at;  // earliest time only
    for (const auto& rec : records) {
      if (performed_at.contains(rec.user)) continue;
      CreditEvent ev{rec.user, rec.time, {}};
      for (EdgeIndex e : g.in_edges(rec.user)) {
        NodeIndex v = g.edge(e).src;
        auto it = performed_at.find(v);
        if (it == performed_at.end() || it->second >= rec.time) continue;
        if (window && rec.time - it->second > *window) continue;
        ev.direct.emplace_back(v, 0.0);
      }
      for (auto& d : ev.direct) d.second = 1.0 / static_cast<double>(ev.direct.size());
      performed_at.emplace(rec.user, rec.time);
      ++table.actions_per_node[rec.user];
      trace.events.push_back(std::move(ev));
    }
    table.actions.push_back(std::move(trace));
  }

  for (const auto& trace : table.actions) {
    for (const auto& source : trace.events) {
      NodeIndex v = source.performer;
      auto gamma = CreditTable::chain_credit(trace, [v](NodeIndex w) { return w == v; });
      for (std::size_t i = 0; i < trace.events.size(); ++i) {
        NodeIndex u = trace.events[i].performer;
        if (u == v || gamma[i] == 0.0) continue;
        table.node_credit[v] += gamma[i] / static_cast<double>(table.actions_per_node[u]);
      }
    }
  }
  return table;
}

/// Incremental CD spread for greedy selection.
class CreditSpread {
 public:
  explicit CreditSpread(const CreditTable& table)
      : table_(table), in_(table.node_count(), 0), gamma_(table.actions.size()), actions_of_(table.node_count()) {
    for (std::size_t a = 0; a < table.actions.size(); ++a) {
      gamma_[a].assign(table.actions[a].events.size(), 0.0);
      for (const auto& ev : table.actions[a].events) actions_of_[ev.performer].push_back(a);
    }
  }

  double gain(NodeIndex x) const {
    if (in_.at(x)) return 0.0;
    double g = 0.0;
    for (std::size_t a : actions_of_[x]) {
      auto next = recompute(a, x);
      const auto& events = table_.actions[a].events;
      for (std::size_t i = 0; i < events.size(); ++i) {
        g += (next[i] - gamma_[a][i]) / static_cast<double>(table_.actions_per_node[events[i].performer]);
      }
    }
    return g;
  }

  void add(NodeIndex x) {
    if (in_.at(x)) return;
    for (std::size_t a : actions_of_[x]) gamma_[a] = recompute(a, x);
    in_[x] = 1;
  }

  double value() const {
    double total = 0.0;
    for (std::size_t a = 0; a < gamma_.size(); ++a) {
      const auto& events = table_.actions[a].events;
      for (std::size_t i = 0; i < events.size(); ++i) {
        total += gamma_[a][i] / static_cast<double>(table_.actions_per_node[events[i].performer]);
      }
    }
    return total;
  }

 private:
  std::vector<double> recompute(std::size_t a, NodeIndex extra) const {
    return CreditTable::chain_credit(table_.actions[a], [&](NodeIndex w) { return w == extra || in_[w] != 0; });
  }

  const CreditTable& table_;
  std::vector<char> in_;
  std::vector<std::vector<double>> gamma_;
  std::vector<std::vector<std::size_t>> actions_of_;
};

inline SeedResult cd_maximize(const CreditTable& credits, std::size_t k, unsigned threads = 1) {
  auto start = std::chrono::steady_clock::now();
  SeedResult result;
  result.model = "cd";
  result.requested_k = k;
  const std::size_t n = credits.node_count();
  if (k > n) {
    result.warnings.push_back("k = " + std::to_string(k) + " exceeds |V| = " + std::to_string(n) + "; truncated");
    k = n;
  }
  if (k > 0) {
    CreditSpread spread(credits);
    std::vector<NodeIndex> candidates(n);
    std::iota(candidates.begin(), candidates.end(), NodeIndex{0});
    auto picks = lazy_greedy(
        candidates, k, [&spread](NodeIndex v) { return spread.gain(v); },
        [&](NodeIndex v) {
          spread.add(v);
          result.sigma_values.push_back(spread.value());
        },
        threads);
    for (const auto& p : picks) {
      result.seeds.push_back(p.node);
      result.marginal_gains.push_back(p.gain);
    }
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace evinf
