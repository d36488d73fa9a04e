#pragma once

#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "evinf/celf.hpp"
#include "evinf/graph.hpp"
#include "evinf/measures.hpp"
#include "evinf/seed_result.hpp"
#include "evinf/spread.hpp"

namespace evinf {

struct MaximizeOptions {
  SpreadOptions spread;
  unsigned threads = 1;
};

/// Selects k seeds maximizing sigma with CELF. Ties on equal marginal gain go
/// to the smaller node index; k larger than |V| is truncated with a warning.
inline SeedResult maximize(const InfluenceGraph& g, std::size_t k, MeasureKind kind,
                           const MaximizeOptions& options = {}) {
  auto start = std::chrono::steady_clock::now();
  SeedResult result;
  result.measure = kind;
  result.requested_k = k;
  if (k > g.node_count()) {
    result.warnings.push_back("k = " + std::to_string(k) + " exceeds |V| = " + std::to_string(g.node_count()) +
                              "; truncated");
    k = g.node_count();
  }
  if (k > 0) {
    SpreadEvaluator eval(g, kind, options.spread);
    std::vector<NodeIndex> candidates(g.node_count());
    std::iota(candidates.begin(), candidates.end(), NodeIndex{0});
    auto picks = lazy_greedy(
        candidates, k, [&eval](NodeIndex v) { return eval.gain(v); },
        [&](NodeIndex v) {
          eval.add(v);
          result.sigma_values.push_back(eval.value());
        },
        options.threads);
    for (const auto& p : picks) {
      result.seeds.push_back(p.node);
      result.marginal_gains.push_back(p.gain);
    }
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace evinf
