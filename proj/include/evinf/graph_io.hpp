#pragma once

// CSV/TSV ingestion and serialization for InfluenceGraph and action logs.
//
//   edges:   src,dst,m_I,m_P,m_IP          pre-estimated edge BBAs
//        or  src,dst,ind_1,...,ind_k       indicator values in [0,1]
//   nodes:   node_id[,pos,neg,neut]        explicit opinions override messages
//   actions: user,action,time

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "evinf/graph.hpp"
#include "evinf/opinion.hpp"
#include "evinf/text.hpp"

namespace evinf {

struct GraphText {
  std::string edges;
  std::string nodes;
  std::optional<std::string> messages;
  std::optional<std::string> lexicon;
  std::string edges_name = "edges";
  std::string nodes_name = "nodes";
  std::string messages_name = "messages";
  std::string lexicon_name = "lexicon";
};

struct LoadOptions {
  double indicator_discount = 0.1;
  AlphaMapping alpha_mapping = AlphaMapping::Weight;
};

struct LoadReport {
  std::size_t users_without_messages = 0;
  std::size_t skipped_empty_messages = 0;
  std::size_t opinion_conflict_fallbacks = 0;
  std::vector<std::string> warnings;
};

struct LoadedGraph {
  InfluenceGraph graph;
  LoadReport report;
};

namespace detail {

inline std::vector<std::string_view> csv_fields(const text::Line& line) {
  auto fields = text::split(line.content, ',');
  for (auto& f : fields) f = text::trim(f);
  return fields;
}

inline bool is_bba_header(const std::vector<std::string_view>& header) {
  return header.size() == 5 && text::lower(header[2]) == "m_i" && text::lower(header[3]) == "m_p" &&
         text::lower(header[4]) == "m_ip";
}

}  // namespace detail

inline LoadedGraph parse_graph(const GraphText& in, const LoadOptions& options = {}) {
  LoadReport report;
  GraphBuilder builder(options.alpha_mapping);

  // Nodes.
  auto node_rows = text::lines(in.nodes);
  if (node_rows.empty()) throw Error(ErrorKind::Parse, in.nodes_name + ": missing header row");
  auto node_header = detail::csv_fields(node_rows.front());
  const bool has_opinion_columns = node_header.size() == 4;
  if (node_header.size() != 1 && node_header.size() != 4) {
    throw Error(ErrorKind::Parse, text::where(in.nodes_name, node_rows.front().number) +
                                      ": header must be node_id[,pos,neg,neut]");
  }
  std::vector<bool> explicit_opinion;
  for (std::size_t i = 1; i < node_rows.size(); ++i) {
    const auto& row = node_rows[i];
    auto f = detail::csv_fields(row);
    if (f.size() != node_header.size()) {
      throw Error(ErrorKind::Parse, text::where(in.nodes_name, row.number) + ": expected " +
                                        std::to_string(node_header.size()) + " fields");
    }
    if (f[0].empty()) throw Error(ErrorKind::Parse, text::where(in.nodes_name, row.number) + ": empty node id");
    if (builder.has_node(f[0])) {
      throw Error(ErrorKind::Parse, text::where(in.nodes_name, row.number) + ": duplicate node '" +
                                        std::string(f[0]) + "'");
    }
    bool given = has_opinion_columns && !(f[1].empty() && f[2].empty() && f[3].empty());
    OpinionDistribution opinion;
    if (given) {
      try {
        opinion = OpinionDistribution(text::parse_double(f[1], in.nodes_name, row.number),
                                      text::parse_double(f[2], in.nodes_name, row.number),
                                      text::parse_double(f[3], in.nodes_name, row.number));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        throw Error(ErrorKind::Parse, text::where(in.nodes_name, row.number) + ": " + e.what());
      }
    }
    builder.add_node(std::string(f[0]), opinion);
    explicit_opinion.push_back(given);
  }

  // Messages -> per-user mean opinion.
  if (in.messages) {
    PolarityLexicon lexicon;
    if (in.lexicon) lexicon = parse_lexicon(*in.lexicon, in.lexicon_name);
    std::vector<std::vector<OpinionDistribution>> per_user(builder.node_count());
    for (const auto& msg : parse_messages(*in.messages, in.messages_name)) {
      auto v = builder.find(msg.author);
      if (!v) {
        throw Error(ErrorKind::Referential, in.messages_name + ": message author '" + msg.author + "' is not a node");
      }
      if (msg.tokens.empty()) {
        ++report.skipped_empty_messages;
        continue;
      }
      per_user[*v].push_back(message_polarity(msg, lexicon));
    }
    for (NodeIndex v = 0; v < per_user.size(); ++v) {
      if (explicit_opinion[v]) continue;
      if (per_user[v].empty()) {
        ++report.users_without_messages;
        continue;
      }
      builder.set_opinion(v, user_opinion(per_user[v]));
    }
  } else {
    for (NodeIndex v = 0; v < explicit_opinion.size(); ++v) {
      if (!explicit_opinion[v]) ++report.users_without_messages;
    }
  }
  if (report.users_without_messages > 0) {
    report.warnings.push_back(std::to_string(report.users_without_messages) +
                              " user(s) without messages or explicit opinion received the neutral opinion");
  }

  // Edges.
  auto edge_rows = text::lines(in.edges);
  if (edge_rows.empty()) throw Error(ErrorKind::Parse, in.edges_name + ": missing header row");
  auto edge_header = detail::csv_fields(edge_rows.front());
  if (edge_header.size() < 3) {
    throw Error(ErrorKind::Parse, text::where(in.edges_name, edge_rows.front().number) +
                                      ": header must be src,dst followed by m_I,m_P,m_IP or indicator columns");
  }
  const bool bba_columns = detail::is_bba_header(edge_header);
  for (std::size_t i = 1; i < edge_rows.size(); ++i) {
    const auto& row = edge_rows[i];
    auto f = detail::csv_fields(row);
    if (f.size() != edge_header.size()) {
      throw Error(ErrorKind::Parse, text::where(in.edges_name, row.number) + ": expected " +
                                        std::to_string(edge_header.size()) + " fields");
    }
    auto src = builder.find(f[0]);
    auto dst = builder.find(f[1]);
    if (!src || !dst) {
      throw Error(ErrorKind::Referential, text::where(in.edges_name, row.number) + ": edge " + std::string(f[0]) +
                                              "->" + std::string(f[1]) + " references an unknown node");
    }
    std::vector<double> values;
    for (std::size_t c = 2; c < f.size(); ++c) values.push_back(text::parse_double(f[c], in.edges_name, row.number));
    try {
      if (bba_columns) {
        builder.add_edge(*src, *dst, edge_bba(values[0], values[1], values[2]));
      } else {
        std::vector<IndicatorBBA> indicators;
        for (std::size_t c = 0; c < values.size(); ++c) {
          indicators.push_back(
              indicator_from_value(values[c], options.indicator_discount, std::string(edge_header[c + 2])));
        }
        builder.add_edge(*src, *dst, edge_influence_bba(indicators), values);
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, text::where(in.edges_name, row.number) + ": " + e.what());
    }
  }

  LoadedGraph out{builder.build(), std::move(report)};
  out.report.opinion_conflict_fallbacks = builder.conflict_fallbacks();
  if (out.report.opinion_conflict_fallbacks > 0) {
    out.report.warnings.push_back(std::to_string(out.report.opinion_conflict_fallbacks) +
                                  " opinion BBA(s) hit total conflict and fell back to vacuous");
  }
  return out;
}

struct GraphFiles {
  std::string edges;
  std::string nodes;
  std::optional<std::string> messages;
  std::optional<std::string> lexicon;
};

inline LoadedGraph load_graph(const GraphFiles& files, const LoadOptions& options = {}) {
  GraphText in;
  in.edges = text::read_file(files.edges);
  in.nodes = text::read_file(files.nodes);
  in.edges_name = files.edges;
  in.nodes_name = files.nodes;
  if (files.messages) {
    in.messages = text::read_file(*files.messages);
    in.messages_name = *files.messages;
  }
  if (files.lexicon) {
    in.lexicon = text::read_file(*files.lexicon);
    in.lexicon_name = *files.lexicon;
  }
  return parse_graph(in, options);
}

inline std::string serialize_edges(const InfluenceGraph& g) {
  const auto& omega = influence_frame();
  const Subset i = omega->singleton("I");
  const Subset p = omega->singleton("P");
  std::ostringstream out;
  out << "src,dst,m_I,m_P,m_IP\n";
  for (const auto& e : g.edges()) {
    out << g.node(e.src).id << ',' << g.node(e.dst).id << ',' << text::format_double(e.bba.mass(i)) << ','
        << text::format_double(e.bba.mass(p)) << ',' << text::format_double(e.bba.mass(omega->full())) << '\n';
  }
  return out.str();
}

inline std::string serialize_nodes(const InfluenceGraph& g) {
  std::ostringstream out;
  out << "node_id,pos,neg,neut\n";
  for (const auto& n : g.nodes()) {
    out << n.id << ',' << text::format_double(n.opinion.pos()) << ',' << text::format_double(n.opinion.neg()) << ','
        << text::format_double(n.opinion.neut()) << '\n';
  }
  return out.str();
}

/// CSV `user,action,time`, header mandatory. Users must exist in the graph.
inline std::vector<ActionRecord> parse_action_log(std::string_view data, const InfluenceGraph& g,
                                                  std::string_view source = "actions") {
  auto rows = text::lines(data);
  if (rows.empty()) throw Error(ErrorKind::Parse, std::string(source) + ": missing header row");
  std::vector<ActionRecord> log;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto f = detail::csv_fields(rows[i]);
    if (f.size() != 3) throw Error(ErrorKind::Parse, text::where(source, rows[i].number) + ": expected 3 fields");
    auto user = g.find(f[0]);
    if (!user) {
      throw Error(ErrorKind::Referential, text::where(source, rows[i].number) + ": unknown user '" +
                                              std::string(f[0]) + "'");
    }
    auto time = text::parse_int(f[2], source, rows[i].number);
    if (time < 0) throw Error(ErrorKind::Parse, text::where(source, rows[i].number) + ": negative time");
    log.push_back({*user, std::string(f[1]), time});
  }
  return log;
}

/// Node metrics `node,follow,mention,retweet,tweet`.
struct NodeMetrics {
  double follow = 0;
  double mention = 0;
  double retweet = 0;
  double tweet = 0;
};

inline std::map<std::string, NodeMetrics> parse_node_metrics(std::string_view data, std::string_view source = "metrics") {
  auto rows = text::lines(data);
  if (rows.empty()) throw Error(ErrorKind::Parse, std::string(source) + ": missing header row");
  std::map<std::string, NodeMetrics> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto f = detail::csv_fields(rows[i]);
    if (f.size() != 5) throw Error(ErrorKind::Parse, text::where(source, rows[i].number) + ": expected 5 fields");
    out[std::string(f[0])] = {text::parse_double(f[1], source, rows[i].number),
                              text::parse_double(f[2], source, rows[i].number),
                              text::parse_double(f[3], source, rows[i].number),
                              text::parse_double(f[4], source, rows[i].number)};
  }
  return out;
}

}  // namespace evinf
