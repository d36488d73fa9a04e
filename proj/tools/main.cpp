#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "evinf/evinf.hpp"

namespace fs = std::filesystem;
using namespace evinf;
using evinf::cli::KeySpec;
using evinf::cli::RunConfig;

namespace {

// --- key sets ----------------------------------------------------------------

std::vector<KeySpec> common_keys() {
  return {{"seed", "1"}, {"out", "out", true}, {"threads", "1"}, {"timing", "false"}};
}

std::vector<KeySpec> graph_keys() {
  return {{"edges", "", true},
          {"nodes", "", true},
          {"messages", "", true},
          {"lexicon", "", true},
          {"indicator_discount", "0.1"},
          {"alpha_mapping", "weight"}};
}

std::vector<KeySpec> generator_keys() {
  return {{"gen_nodes", "1010"},        {"gen_edges", "6906"},         {"out_smoothing", "1.6"},
          {"in_smoothing", "1.0"},      {"threshold", "15"},           {"min_influence", "0.5"},
          {"min_pos_opinion", "0.8"},   {"min_neighbor_pos", "0.3"},   {"min_neighbor_neg", "0.8"},
          {"positive_fraction", "0.5"}};
}

std::vector<KeySpec> spread_keys() { return {{"phi_mode", "literal"}, {"dedupe_direct", "false"}}; }

std::vector<KeySpec> join(std::initializer_list<std::vector<KeySpec>> parts) {
  std::vector<KeySpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<KeySpec> keys_for(const std::string& command) {
  if (command == "maximize") {
    return join({common_keys(), graph_keys(), spread_keys(),
                 {{"model", "evidential"},
                  {"measure", "s1-prob"},
                  {"k", "50"},
                  {"actions", "", true},
                  {"cd_window", ""},
                  {"oc_prune_fraction", "0.5"}}});
  }
  if (command == "simulate") {
    return join({common_keys(), graph_keys(),
                 {{"seeds_file", "", true},
                  {"cascade_model", "icm"},
                  {"cascade_p", ""},
                  {"cascade_runs", "1000"},
                  {"wc_target_indegree", "false"},
                  {"normalize_ltm", "true"}}});
  }
  if (command == "credits") return join({common_keys(), graph_keys(), {{"actions", "", true}, {"cd_window", ""}}});
  if (command == "generate") return join({common_keys(), generator_keys()});
  if (command == "experiment") {
    return join({common_keys(), generator_keys(), spread_keys(),
                 {{"sweep_param", "min_influence"},
                  {"sweep_values", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"},
                  {"reps", "20"},
                  {"k", "50"},
                  {"measure", "all"}}});
  }
  return join({common_keys(), graph_keys(),
               {{"seeds", "", true}, {"seeds_dir", "", true}, {"metrics", "", true}, {"confidence", "0.95"}}});
}

// --- outputs -----------------------------------------------------------------

/// Files are buffered and only written once the whole command succeeded; each
/// goes through a temporary name and a rename.
class Outputs {
 public:
  void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

  void commit(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<fs::path> staged;
    for (const auto& [name, content] : files_) {
      fs::path tmp = dir / (name + ".partial");
      std::ofstream out(tmp, std::ios::binary);
      out << content;
      out.close();
      if (!out) {
        for (const auto& p : staged) fs::remove(p, ec);
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
      }
      staged.push_back(tmp);
    }
    for (std::size_t i = 0; i < files_.size(); ++i) fs::rename(staged[i], dir / files_[i].first);
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// --- shared parsing ------------------------------------------------------------

LoadedGraph load(const RunConfig& cfg) {
  GraphFiles files{cfg.required("edges"), cfg.required("nodes"), cfg.optional_str("messages"),
                   cfg.optional_str("lexicon")};
  LoadOptions opts;
  opts.indicator_discount = cfg.unit("indicator_discount");
  auto mapping = cfg.str("alpha_mapping");
  if (mapping == "weight") {
    opts.alpha_mapping = AlphaMapping::Weight;
  } else if (mapping == "literal") {
    opts.alpha_mapping = AlphaMapping::Literal;
  } else {
    throw Error(ErrorKind::Config, "alpha_mapping must be weight or literal");
  }
  auto loaded = load_graph(files, opts);
  warn(loaded.report.warnings);
  return loaded;
}

SpreadOptions spread_options(const RunConfig& cfg) {
  SpreadOptions s;
  auto mode = cfg.str("phi_mode");
  if (mode == "literal") {
    s.phi_mode = PhiMode::Literal;
  } else if (mode == "capped") {
    s.phi_mode = PhiMode::Capped;
  } else {
    throw Error(ErrorKind::Config, "phi_mode must be literal or capped");
  }
  s.dedupe_direct = cfg.flag("dedupe_direct");
  return s;
}

std::vector<MeasureKind> measures(const RunConfig& cfg) {
  auto names = cfg.list("measure");
  if (names.size() == 1 && names[0] == "all") return {kAllMeasures.begin(), kAllMeasures.end()};
  if (names.empty()) throw Error(ErrorKind::Usage, "no measure given");
  std::vector<MeasureKind> out;
  for (const auto& n : names) out.push_back(parse_measure(n));
  return out;
}

GeneratorParams generator_params(const RunConfig& cfg) {
  GeneratorParams p;
  p.topology.nodes = cfg.count("gen_nodes");
  p.topology.edges = cfg.count("gen_edges");
  p.topology.out_smoothing = cfg.number("out_smoothing");
  p.topology.in_smoothing = cfg.number("in_smoothing");
  p.influencer_outdegree_threshold = cfg.count("threshold");
  p.min_influence = cfg.unit("min_influence");
  p.min_pos_opinion = cfg.unit("min_pos_opinion");
  p.min_neighbor_pos = cfg.unit("min_neighbor_pos");
  p.min_neighbor_neg = cfg.unit("min_neighbor_neg");
  p.positive_fraction = cfg.unit("positive_fraction");
  p.rng_seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  if (p.influencer_outdegree_threshold < 1) throw Error(ErrorKind::Config, "threshold must be at least 1");
  if (p.topology.nodes < 2) throw Error(ErrorKind::Config, "gen_nodes must be at least 2");
  return p;
}

std::optional<std::int64_t> window(const RunConfig& cfg) {
  if (cfg.str("cd_window").empty()) return std::nullopt;
  auto w = cfg.integer("cd_window");
  if (w < 0) throw Error(ErrorKind::Config, "cd_window must be non-negative");
  return w;
}

unsigned thread_count(const RunConfig& cfg) {
  auto t = cfg.count("threads");
  if (t < 1) throw Error(ErrorKind::Config, "threads must be at least 1");
  return static_cast<unsigned>(t);
}

std::string fmt(double v) { return text::format_double(v); }

// --- commands ----------------------------------------------------------------

void cmd_maximize(const RunConfig& cfg, Outputs& out) {
  const auto model = cfg.str("model");
  if (model != "evidential" && model != "cd" && model != "oc") {
    throw Error(ErrorKind::Usage, "model must be evidential, cd or oc");
  }
  const std::size_t k = cfg.count("k");
  const bool timing = cfg.flag("timing");
  const auto spread = spread_options(cfg);
  const auto kinds = measures(cfg);
  const auto prune = cfg.number("oc_prune_fraction");
  const auto cd_window = window(cfg);
  const unsigned threads = thread_count(cfg);
  if (model == "cd") cfg.required("actions");
  auto loaded = load(cfg);
  const auto& g = loaded.graph;

  std::vector<SeedResult> results;
  if (model == "evidential") {
    MaximizeOptions opts;
    opts.spread = spread;
    opts.threads = threads;
    for (auto kind : kinds) results.push_back(maximize(g, k, kind, opts));
  } else if (model == "cd") {
    auto actions_path = cfg.required("actions");
    auto log = parse_action_log(text::read_file(actions_path), g, actions_path);
    results.push_back(cd_maximize(cd_assign_credits(g, log, cd_window), k, threads));
  } else {
    OcOptions opts;
    opts.prune_fraction = prune;
    opts.rng_seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    results.push_back(oc_maximize(g, k, opts));
  }

  std::ostringstream runtime;
  runtime << "model,measure,k,nodes,edges,elapsed_seconds\n";
  for (auto& r : results) {
    warn(r.warnings);
    if (!timing) r.elapsed_seconds = 0.0;
    out.add("seeds_" + r.label() + ".json", to_json(r, g).dump(2) + "\n");
    runtime << r.model << ',' << r.label() << ',' << k << ',' << g.node_count() << ',' << g.edge_count() << ','
            << text::format_fixed(r.elapsed_seconds, 6) << '\n';
  }
  out.add("runtime.csv", runtime.str());
}

std::vector<NodeIndex> resolve_seeds(const InfluenceGraph& g, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  auto list = seed_list_from_json(j, fs::path(path).stem().string());
  std::vector<NodeIndex> out;
  for (const auto& id : list.nodes) {
    auto v = g.find(id);
    if (!v) throw Error(ErrorKind::Referential, path + ": seed '" + id + "' is not a node of the graph");
    out.push_back(*v);
  }
  return out;
}

void cmd_simulate(const RunConfig& cfg, Outputs& out) {
  CascadeConfig cc;
  cc.model = parse_cascade_model(cfg.str("cascade_model"));
  cc.uniform_probability = cfg.optional_number("cascade_p");
  cc.monte_carlo_runs = cfg.count("cascade_runs");
  cc.rng_seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  cc.wc_target_indegree = cfg.flag("wc_target_indegree");
  cc.normalize_ltm_weights = cfg.flag("normalize_ltm");
  cc.threads = thread_count(cfg);
  if (cc.monte_carlo_runs == 0) throw Error(ErrorKind::Config, "cascade_runs must be at least 1");
  if (cc.uniform_probability && !(*cc.uniform_probability >= 0.0 && *cc.uniform_probability <= 1.0)) {
    throw Error(ErrorKind::Config, "cascade_p must lie in [0,1]");
  }
  auto seeds_path = cfg.required("seeds_file");
  auto loaded = load(cfg);
  auto seeds = resolve_seeds(loaded.graph, seeds_path);
  auto sizes = cascade_samples(loaded.graph, seeds, cc);

  double mean = 0.0;
  for (auto s : sizes) mean += static_cast<double>(s);
  mean /= static_cast<double>(sizes.size());
  double var = 0.0;
  for (auto s : sizes) var += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
  var /= static_cast<double>(sizes.size());

  std::ostringstream summary;
  summary << "model,seeds,runs,mean,std,min,max\n"
          << cfg.str("cascade_model") << ',' << seeds.size() << ',' << sizes.size() << ',' << text::format_fixed(mean, 6)
          << ',' << text::format_fixed(std::sqrt(var), 6) << ',' << *std::min_element(sizes.begin(), sizes.end()) << ','
          << *std::max_element(sizes.begin(), sizes.end()) << '\n';
  std::ostringstream samples;
  samples << "run,active\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) samples << i << ',' << sizes[i] << '\n';
  out.add("spread.csv", summary.str());
  out.add("samples.csv", samples.str());
}

void cmd_credits(const RunConfig& cfg, Outputs& out) {
  auto cd_window = window(cfg);
  auto actions_path = cfg.required("actions");
  auto loaded = load(cfg);
  const auto& g = loaded.graph;
  auto table = cd_assign_credits(g, parse_action_log(text::read_file(actions_path), g, actions_path), cd_window);

  std::ostringstream credits;
  credits << "node,actions,credit\n";
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    credits << g.node(v).id << ',' << table.actions_per_node[v] << ',' << fmt(table.node_credit[v]) << '\n';
  }
  std::ostringstream events;
  events << "action,performer,time,influencer,credit\n";
  for (const auto& trace : table.actions) {
    for (const auto& ev : trace.events) {
      for (const auto& [w, c] : ev.direct) {
        events << trace.action << ',' << g.node(ev.performer).id << ',' << ev.time << ',' << g.node(w).id << ','
               << fmt(c) << '\n';
      }
    }
  }
  out.add("credits.csv", credits.str());
  out.add("credit_events.csv", events.str());
}

void cmd_generate(const RunConfig& cfg, Outputs& out) {
  auto net = generate_network(generator_params(cfg));
  out.add("nodes.csv", serialize_nodes(net.graph));
  out.add("edges.csv", serialize_edges(net.graph));
  out.add("truth.json", to_json(net.truth, net.graph).dump(2) + "\n");
}

void cmd_experiment(const RunConfig& cfg, Outputs& out) {
  ExperimentConfig ec;
  ec.base = generator_params(cfg);
  ec.param = parse_sweep_param(cfg.str("sweep_param"));
  ec.values.clear();
  for (const auto& v : cfg.list("sweep_values")) {
    try {
      ec.values.push_back(text::parse_double(v, "sweep_values", 0));
    } catch (const Error&) {
      throw Error(ErrorKind::Config, "sweep_values entry '" + v + "' is not a number");
    }
  }
  ec.repetitions = cfg.count("reps");
  ec.k = cfg.count("k");
  ec.measures = measures(cfg);
  ec.spread = spread_options(cfg);
  ec.root_seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  ec.threads = thread_count(cfg);
  validate(ec);
  auto result = run_experiment(ec);
  warn(result.warnings);
  out.add("accuracy.csv", experiment_csv(ec, result));
}

std::string opinion_row(const std::string& label, const char* group, const OpinionSummary& s) {
  std::ostringstream row;
  row << label << ',' << group << ',' << s.count;
  if (s.empty()) {
    row << ",,,,";
  } else {
    row << ',' << text::format_fixed(s.pos.mean, 6) << ',' << text::format_fixed(s.pos.half_width, 6) << ','
        << text::format_fixed(s.neg.mean, 6) << ',' << text::format_fixed(s.neg.half_width, 6);
  }
  row << '\n';
  return row.str();
}

void cmd_report(const RunConfig& cfg, Outputs& out) {
  double confidence = cfg.number("confidence");
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error(ErrorKind::Config, "confidence must lie in (0,1)");
  std::vector<std::string> files = cfg.list("seeds");
  if (auto dir = cfg.optional_str("seeds_dir")) {
    if (!fs::is_directory(*dir)) throw Error(ErrorKind::Io, "seeds_dir '" + *dir + "' is not a directory");
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(*dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path().string());
    }
    std::sort(found.begin(), found.end());
    if (found.empty()) throw Error(ErrorKind::EmptyReport, "seeds_dir '" + *dir + "' holds no seed files");
    files.insert(files.end(), found.begin(), found.end());
  }
  if (files.empty()) throw Error(ErrorKind::Config, "report needs seeds or seeds_dir");
  std::vector<std::string> missing;
  for (const auto& f : files) {
    if (!fs::is_regular_file(f)) missing.push_back(f);
  }
  auto metrics_path = cfg.optional_str("metrics");
  if (metrics_path && !fs::is_regular_file(*metrics_path)) missing.push_back(*metrics_path);
  if (!missing.empty()) {
    std::string msg = "missing input file(s):";
    for (const auto& m : missing) msg += "\n  " + m;
    throw Error(ErrorKind::Io, msg);
  }

  auto loaded = load(cfg);
  const auto& g = loaded.graph;
  std::vector<std::string> labels;
  std::vector<SeedResult> sets;
  for (const auto& f : files) {
    SeedResult r;
    r.seeds = resolve_seeds(g, f);
    nlohmann::json j = nlohmann::json::parse(text::read_file(f));
    labels.push_back(seed_list_from_json(j, fs::path(f).stem().string()).label);
    sets.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) labels[i] += "_" + std::to_string(i + 1);
    }
  }

  std::ostringstream matrix;
  matrix << "label";
  for (const auto& l : labels) matrix << ',' << l;
  matrix << '\n';
  for (std::size_t i = 0; i < sets.size(); ++i) {
    matrix << labels[i];
    for (std::size_t j = 0; j < sets.size(); ++j) matrix << ',' << seed_intersection(sets[i], sets[j]);
    matrix << '\n';
  }
  out.add("intersection.csv", matrix.str());

  std::ostringstream opinions;
  opinions << "label,group,count,pos_mean,pos_half_width,neg_mean,neg_half_width\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto rep = opinion_report(g, sets[i].seeds, confidence);
    opinions << opinion_row(labels[i], "seeds", rep.seeds) << opinion_row(labels[i], "neighbors", rep.neighbors);
  }
  out.add("opinions.csv", opinions.str());

  if (metrics_path) {
    auto metrics = parse_node_metrics(text::read_file(*metrics_path), *metrics_path);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto curves = accumulated_curves(g, sets[i], metrics);
      warn(curves.warnings);
      std::ostringstream csv;
      csv << "rank,node,follow,mention,retweet,tweet\n";
      for (const auto& p : curves.points) {
        csv << p.rank << ',' << g.node(p.node).id << ',' << fmt(p.cumulative.follow) << ',' << fmt(p.cumulative.mention)
            << ',' << fmt(p.cumulative.retweet) << ',' << fmt(p.cumulative.tweet) << '\n';
      }
      out.add("curves_" + labels[i] + ".csv", csv.str());
    }
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Config: return 2;
    default: return 1;
  }
}

struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::int64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> measure;
  std::optional<std::int64_t> k;
  bool timing = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidential opinion-based influence maximization"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"maximize", "select k seeds (evidential, cd or oc model)"},
      {"simulate", "Monte Carlo cascade spread of a seed file"},
      {"credits", "credit distribution over an action log"},
      {"generate", "synthetic network with ground-truth labels"},
      {"experiment", "accuracy sweep over a generator parameter"},
      {"report", "seed intersections, opinion tables and activity curves"}};
  std::map<std::string, Flags> flags;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto& f = flags[name];
    sub->add_option("--config", f.config, "key = value config file (a manifest replays a run)");
    sub->add_option("--set", f.sets, "override one key: key=value");
    sub->add_option("--seed", f.seed, "root seed");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--measure", f.measure, "measure name(s), comma separated, or all");
    sub->add_option("--k", f.k, "seed budget");
    sub->add_flag("--timing", f.timing, "record wall-clock times (outputs are then not reproducible)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto& f = flags[command];
  try {
    RunConfig cfg(command, keys_for(command));
    if (!f.config.empty()) cfg.load_file(f.config);
    for (const auto& s : f.sets) cfg.set_assignment(s);
    if (f.seed) cfg.set("seed", std::to_string(*f.seed), "--seed");
    if (f.out) cfg.set("out", *f.out, "--out");
    if (f.measure) cfg.set("measure", *f.measure, "--measure");
    if (f.k) {
      if (*f.k < 0) throw Error(ErrorKind::Usage, "--k must be non-negative");
      cfg.set("k", std::to_string(*f.k), "--k");
    }
    if (f.timing) cfg.set("timing", "true", "--timing");
    cfg.resolve_paths();

    Outputs out;
    if (command == "maximize") {
      cmd_maximize(cfg, out);
    } else if (command == "simulate") {
      cmd_simulate(cfg, out);
    } else if (command == "credits") {
      cmd_credits(cfg, out);
    } else if (command == "generate") {
      cmd_generate(cfg, out);
    } else if (command == "experiment") {
      cmd_experiment(cfg, out);
    } else {
      cmd_report(cfg, out);
    }
    out.add("manifest.ini", cfg.manifest());
    out.commit(cfg.str("out"));
    std::cout << "wrote " << cfg.str("out") << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
