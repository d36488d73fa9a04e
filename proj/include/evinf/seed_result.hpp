#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evinf/error.hpp"
#include "evinf/graph.hpp"
#include "evinf/measures.hpp"

namespace evinf {

/// Ordered seed set with per-step gains and cumulative objective values.
/// `model` is "evidential" for the belief-function maximizer, "cd" or "oc"
/// for the baselines; `measure` is set only for the evidential model.
struct SeedResult {
  std::string model = "evidential";
  std::optional<MeasureKind> measure;
  std::size_t requested_k = 0;
  std::vector<NodeIndex> seeds;
  std::vector<double> marginal_gains;
  std::vector<double> sigma_values;
  double elapsed_seconds = 0.0;
  std::vector<std::string> warnings;

  std::string label() const { return measure ? std::string(to_string(*measure)) : model; }
};

inline nlohmann::ordered_json to_json(const SeedResult& r, const InfluenceGraph& g) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["measure"] = r.label();
  j["k"] = r.requested_k;
  auto seeds = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.seeds.size(); ++i) {
    nlohmann::ordered_json s;
    s["rank"] = i + 1;
    s["node"] = g.node(r.seeds[i]).id;
    s["gain"] = r.marginal_gains.at(i);
    s["sigma"] = r.sigma_values.at(i);
    seeds.push_back(std::move(s));
  }
  j["seeds"] = std::move(seeds);
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

/// What a report needs back from a SeedResult file.
struct SeedList {
  std::string label;
  std::vector<std::string> nodes;
};

inline SeedList seed_list_from_json(const nlohmann::json& j, std::string fallback_label = {}) {
  SeedList out;
  try {
    out.label = j.contains("measure") && j["measure"].is_string() ? j["measure"].get<std::string>()
                                                                   : std::move(fallback_label);
    std::vector<std::pair<std::int64_t, std::string>> ranked;
    for (const auto& s : j.at("seeds")) ranked.emplace_back(s.at("rank").get<std::int64_t>(), s.at("node").get<std::string>());
    std::sort(ranked.begin(), ranked.end());
    for (auto& [rank, node] : ranked) out.nodes.push_back(std::move(node));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed seed file: ") + e.what());
  }
  return out;
}

}  // namespace evinf
