#pragma once

// Lazy-forward greedy selection (CELF). Valid for submodular objectives:
// a stale marginal gain is an upper bound on the current one, so a node
// whose gain is fresh and still on top of the queue is the greedy choice.

#include <cmath>
#include <cstdint>
#include <queue>
#include <thread>
#include <vector>

#include "evinf/graph.hpp"

namespace evinf {

/// Gains are ordered at this resolution; closer values fall through to the
/// smaller-index tie-break so rounding noise cannot reorder equal gains.
inline constexpr double kGainResolution = 1e-12;

inline std::int64_t gain_key(double gain) { return std::llround(gain / kGainResolution); }

struct GreedyPick {
  NodeIndex node;
  double gain;
};

/// True when (gain_a, a) should be picked before (gain_b, b).
inline bool greedy_before(double gain_a, NodeIndex a, double gain_b, NodeIndex b) {
  auto ka = gain_key(gain_a);
  auto kb = gain_key(gain_b);
  return ka != kb ? ka > kb : a < b;
}

/// Evaluates `gain(v)` for every candidate, splitting the range over
/// `threads` workers. `gain` must be safe to call concurrently.
template <class GainFn>
std::vector<double> evaluate_all(const std::vector<NodeIndex>& candidates, GainFn& gain, unsigned threads) {
  std::vector<double> out(candidates.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(candidates.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = gain(candidates[i]);
    return out;
  }
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (candidates.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(candidates.size(), lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) out[i] = gain(candidates[i]);
      });
    }
  }
  return out;
}

/// Picks up to `k` nodes from `candidates`. `gain(v)` returns the marginal
/// gain of v against the current selection; `commit(v)` adds v to it.
template <class GainFn, class CommitFn>
std::vector<GreedyPick> lazy_greedy(const std::vector<NodeIndex>& candidates, std::size_t k, GainFn&& gain,
                                    CommitFn&& commit, unsigned threads = 1) {
  struct Entry {
    double gain;
    NodeIndex node;
    std::size_t round;
  };
  auto worse = [](const Entry& a, const Entry& b) { return greedy_before(b.gain, b.node, a.gain, a.node); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  {
    std::vector<double> initial = evaluate_all(candidates, gain, threads);
    for (std::size_t i = 0; i < candidates.size(); ++i) queue.push({initial[i], candidates[i], 0});
  }

  std::vector<GreedyPick> picks;
  while (picks.size() < k && !queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    if (top.round == picks.size()) {
      commit(top.node);
      picks.push_back({top.node, top.gain});
    } else {
      top.gain = gain(top.node);
      top.round = picks.size();
      queue.push(top);
    }
  }
  return picks;
}

}  // namespace evinf
