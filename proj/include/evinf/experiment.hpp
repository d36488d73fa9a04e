#pragma once

// Generated-data sweeps: vary one generator parameter over a grid, rebuild the
// network for every repetition, select seeds with each measure and score them
// against the ground truth.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "evinf/error.hpp"
#include "evinf/generator.hpp"
#include "evinf/maximizer.hpp"
#include "evinf/metrics.hpp"
#include "evinf/text.hpp"

namespace evinf {

enum class SweepParam { MinInfluence, MinPosOpinion, MinNeighborPos, MinNeighborNeg };

inline constexpr std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::MinInfluence: return "min_influence";
    case SweepParam::MinPosOpinion: return "min_pos_opinion";
    case SweepParam::MinNeighborPos: return "min_neighbor_pos";
    case SweepParam::MinNeighborNeg: return "min_neighbor_neg";
  }
  return "?";
}

inline SweepParam parse_sweep_param(std::string_view name) {
  for (auto p : {SweepParam::MinInfluence, SweepParam::MinPosOpinion, SweepParam::MinNeighborPos,
                 SweepParam::MinNeighborNeg}) {
    if (to_string(p) == name) return p;
  }
  throw Error(ErrorKind::Usage, "unknown sweep parameter '" + std::string(name) + "'");
}

inline void set_param(GeneratorParams& p, SweepParam which, double value) {
  switch (which) {
    case SweepParam::MinInfluence: p.min_influence = value; break;
    case SweepParam::MinPosOpinion: p.min_pos_opinion = value; break;
    case SweepParam::MinNeighborPos: p.min_neighbor_pos = value; break;
    case SweepParam::MinNeighborNeg: p.min_neighbor_neg = value; break;
  }
}

/// The labeled set each measure is meant to find: positive influencers for the
/// first scenario, the two halves for the second and third, all influencers
/// for the plain measure.
inline const std::vector<NodeIndex>& target_set(const GroundTruth& t, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Plain: return t.influencers;
    case MeasureKind::Scenario1Prob:
    case MeasureKind::Scenario1Belief: return t.positive_influencers;
    case MeasureKind::Scenario2Prob:
    case MeasureKind::Scenario2Belief: return t.pos_influencing_pos;
    case MeasureKind::Scenario3Prob:
    case MeasureKind::Scenario3Belief: return t.pos_influencing_neg;
  }
  return t.influencers;
}

struct ExperimentConfig {
  GeneratorParams base;
  SweepParam param = SweepParam::MinInfluence;
  std::vector<double> values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t repetitions = 20;
  std::size_t k = 50;
  std::vector<MeasureKind> measures{kAllMeasures.begin(), kAllMeasures.end()};
  SpreadOptions spread;
  std::uint64_t root_seed = 1;
  unsigned threads = 1;
};

/// Scores of one measure on one generated network.
struct RepScore {
  double detection_influencers = 0.0;
  double accuracy_influencers = 0.0;
  double accuracy_positive = 0.0;
  double accuracy_target = 0.0;
  double mean_seed_pos = 0.0;
  double mean_seed_neg = 0.0;
};

struct ExperimentRow {
  double value = 0.0;
  MeasureKind measure = MeasureKind::Plain;
  std::size_t reps_ok = 0;
  std::size_t reps_failed = 0;
  RepScore mean;  // averaged over successful repetitions
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // value-major, measures in config order
  std::vector<std::string> warnings;

  const ExperimentRow* find(double value, MeasureKind m) const {
    for (const auto& r : rows) {
      if (r.value == value && r.measure == m) return &r;
    }
    return nullptr;
  }
};

/// Generator seed of one repetition. Independent of the swept value, so every
/// grid point of a repetition shares its topology draw.
inline std::uint64_t repetition_seed(std::uint64_t root, std::size_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(rep), 0x65787031u};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline RepScore score_seeds(const GeneratedNetwork& net, const SeedResult& r) {
  const auto& g = net.graph;
  RepScore s;
  s.detection_influencers = r.seeds.empty() ? 0.0 : detection_accuracy(r.seeds, net.truth.influencers);
  s.accuracy_influencers = accuracy(r.seeds, net.truth.influencers);
  s.accuracy_positive = accuracy(r.seeds, net.truth.positive_influencers);
  const auto& target = target_set(net.truth, *r.measure);
  s.accuracy_target = target.empty() ? 0.0 : accuracy(r.seeds, target);
  for (auto v : r.seeds) {
    s.mean_seed_pos += g.node(v).opinion.pos();
    s.mean_seed_neg += g.node(v).opinion.neg();
  }
  if (!r.seeds.empty()) {
    s.mean_seed_pos /= static_cast<double>(r.seeds.size());
    s.mean_seed_neg /= static_cast<double>(r.seeds.size());
  }
  return s;
}

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.repetitions == 0) throw Error(ErrorKind::Usage, "repetitions must be at least 1");
  if (cfg.values.empty()) throw Error(ErrorKind::Usage, "sweep needs at least one value");
  if (cfg.measures.empty()) throw Error(ErrorKind::Usage, "at least one measure is required");
  for (double v : cfg.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::Config, "sweep value " + text::format_double(v) + " outside [0,1]");
  }
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t cells = cfg.values.size() * cfg.repetitions;
  // Per (value, repetition): one score per measure, or nothing on a failed generation.
  std::vector<std::optional<std::vector<RepScore>>> scores(cells);
  std::vector<std::string> failures(cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t vi = cell / cfg.repetitions;
    const std::size_t rep = cell % cfg.repetitions;
    GeneratorParams p = cfg.base;
    set_param(p, cfg.param, cfg.values[vi]);
    p.rng_seed = repetition_seed(cfg.root_seed, rep);
    GeneratedNetwork net;
    try {
      net = generate_network(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Generation) throw;
      failures[cell] = e.what();
      return;
    }
    MaximizeOptions opts;
    opts.spread = cfg.spread;
    std::vector<RepScore> out;
    for (auto m : cfg.measures) out.push_back(score_seeds(net, maximize(net.graph, cfg.k, m, opts)));
    scores[cell] = std::move(out);
  };

  unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cells)));
  if (threads == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t c = next++; c < cells; c = next++) run_cell(c);
        } catch (...) {
          errors[t] = std::current_exception();
          next = cells;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ExperimentResult result;
  for (std::size_t vi = 0; vi < cfg.values.size(); ++vi) {
    for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
      ExperimentRow row;
      row.value = cfg.values[vi];
      row.measure = cfg.measures[mi];
      for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        const auto& cell = scores[vi * cfg.repetitions + rep];
        if (!cell) {
          ++row.reps_failed;
          continue;
        }
        const auto& s = (*cell)[mi];
        ++row.reps_ok;
        row.mean.detection_influencers += s.detection_influencers;
        row.mean.accuracy_influencers += s.accuracy_influencers;
        row.mean.accuracy_positive += s.accuracy_positive;
        row.mean.accuracy_target += s.accuracy_target;
        row.mean.mean_seed_pos += s.mean_seed_pos;
        row.mean.mean_seed_neg += s.mean_seed_neg;
      }
      if (row.reps_ok > 0) {
        double n = static_cast<double>(row.reps_ok);
        row.mean.detection_influencers /= n;
        row.mean.accuracy_influencers /= n;
        row.mean.accuracy_positive /= n;
        row.mean.accuracy_target /= n;
        row.mean.mean_seed_pos /= n;
        row.mean.mean_seed_neg /= n;
      }
      result.rows.push_back(row);
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    if (!failures[c].empty()) {
      result.warnings.push_back(std::string(to_string(cfg.param)) + "=" + text::format_double(cfg.values[c / cfg.repetitions]) +
                                " repetition " + std::to_string(c % cfg.repetitions) + " failed: " + failures[c]);
    }
  }
  return result;
}

inline std::string experiment_csv(const ExperimentConfig& cfg, const ExperimentResult& r) {
  std::ostringstream out;
  out << "param,value,measure,reps_ok,reps_failed,detection_influencers,accuracy_influencers,accuracy_positive,"
         "accuracy_target,mean_seed_pos,mean_seed_neg\n";
  for (const auto& row : r.rows) {
    out << to_string(cfg.param) << ',' << text::format_double(row.value) << ',' << to_string(row.measure) << ','
        << row.reps_ok << ',' << row.reps_failed;
    for (double v : {row.mean.detection_influencers, row.mean.accuracy_influencers, row.mean.accuracy_positive,
                     row.mean.accuracy_target, row.mean.mean_seed_pos, row.mean.mean_seed_neg}) {
      out << ',';
      if (row.reps_ok > 0) out << text::format_fixed(v, 6);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace evinf
