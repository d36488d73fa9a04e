#pragma once

// Opinion polarity estimation from pre-tagged tokens and a polarity lexicon,
// and conversion of a user's opinion distribution into a BBA on Theta.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evinf/belief.hpp"
#include "evinf/error.hpp"
#include "evinf/text.hpp"

namespace evinf {

/// Probability distribution over Theta = {Pos, Neg, Neut}.
class OpinionDistribution {
 public:
  OpinionDistribution() = default;  // neutral

  OpinionDistribution(double pos, double neg, double neut) : pos_(pos), neg_(neg), neut_(neut) {
    if (!(pos >= 0.0 && neg >= 0.0 && neut >= 0.0) || std::abs(pos + neg + neut - 1.0) > kMassTolerance) {
      throw Error(ErrorKind::InvalidArgument, "opinion distribution (" + std::to_string(pos) + ", " +
                                                  std::to_string(neg) + ", " + std::to_string(neut) +
                                                  ") is not a probability triple");
    }
  }

  static OpinionDistribution neutral() { return {}; }

  double pos() const noexcept { return pos_; }
  double neg() const noexcept { return neg_; }
  double neut() const noexcept { return neut_; }

  friend bool operator==(const OpinionDistribution&, const OpinionDistribution&) = default;

 private:
  double pos_ = 0.0;
  double neg_ = 0.0;
  double neut_ = 1.0;
};

enum class PosTag { Noun, Verb, Adj, Adv, Other };

/// Accepts full names, SentiWordNet letters (n, v, a/s, r) and Penn prefixes.
inline PosTag parse_pos_tag(std::string_view raw) {
  auto t = text::lower(text::trim(raw));
  if (t == "noun" || t == "n" || t.starts_with("nn")) return PosTag::Noun;
  if (t == "verb" || t == "v" || t.starts_with("vb")) return PosTag::Verb;
  if (t == "adj" || t == "adjective" || t == "a" || t == "s" || t.starts_with("jj")) return PosTag::Adj;
  if (t == "adv" || t == "adverb" || t == "r" || t.starts_with("rb")) return PosTag::Adv;
  return PosTag::Other;
}

constexpr std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "noun";
    case PosTag::Verb: return "verb";
    case PosTag::Adj: return "adj";
    case PosTag::Adv: return "adv";
    case PosTag::Other: return "other";
  }
  return "other";
}

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::Other;
};

struct Message {
  std::string author;
  std::vector<TaggedToken> tokens;
  std::optional<std::int64_t> timestamp;
};

/// (word, tag) -> polarity. Words are matched case-insensitively.
class PolarityLexicon {
 public:
  void add(std::string_view word, PosTag tag, OpinionDistribution polarity) {
    entries_.insert_or_assign(key(word, tag), polarity);
  }

  std::optional<OpinionDistribution> find(std::string_view word, PosTag tag) const {
    auto it = entries_.find(key(word, tag));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  static std::string key(std::string_view word, PosTag tag) {
    auto k = text::lower(word);
    k += '\t';
    k += to_string(tag);
    return k;
  }

  std::unordered_map<std::string, OpinionDistribution> entries_;
};

/// Lexicon entry for the token, or fully neutral when absent.
inline OpinionDistribution token_polarity(const TaggedToken& token, const PolarityLexicon& lexicon) {
  return lexicon.find(token.surface, token.tag).value_or(OpinionDistribution::neutral());
}

namespace detail {

inline OpinionDistribution mean_of(double pos, double neg, double neut, std::size_t n) {
  double p = pos / static_cast<double>(n);
  double q = neg / static_cast<double>(n);
  double r = neut / static_cast<double>(n);
  // Renormalize so accumulated rounding never leaves the simplex.
  double total = p + q + r;
  return OpinionDistribution(p / total, q / total, r / total);
}

}  // namespace detail

inline OpinionDistribution message_polarity(const Message& msg, const PolarityLexicon& lexicon) {
  if (msg.tokens.empty()) throw Error(ErrorKind::EmptyMessage, "message by '" + msg.author + "' has no tokens");
  double pos = 0.0, neg = 0.0, neut = 0.0;
  for (const auto& token : msg.tokens) {
    auto p = token_polarity(token, lexicon);
    pos += p.pos();
    neg += p.neg();
    neut += p.neut();
  }
  return detail::mean_of(pos, neg, neut, msg.tokens.size());
}

inline OpinionDistribution user_opinion(std::span<const OpinionDistribution> messages) {
  if (messages.empty()) throw Error(ErrorKind::NoMessages, "user has no messages");
  double pos = 0.0, neg = 0.0, neut = 0.0;
  for (const auto& m : messages) {
    pos += m.pos();
    neg += m.neg();
    neut += m.neut();
  }
  return detail::mean_of(pos, neg, neut, messages.size());
}

/// How Pr(Pos) / Pr(Neg) feed the alpha of each simple BBA.
///  - Weight:  m({Pos}) = Pr(Pos), m(Theta) = 1 - Pr(Pos) (alpha = 1 - Pr).
///  - Literal: alpha = Pr, i.e. m({Pos}) = 1 - Pr(Pos).
enum class AlphaMapping { Weight, Literal };

inline MassFunction opinion_to_bba(const OpinionDistribution& pr, AlphaMapping mapping = AlphaMapping::Weight) {
  const auto& theta = opinion_frame();
  const Subset pos = theta->singleton("Pos");
  const Subset neg = theta->singleton("Neg");
  double alpha_pos = mapping == AlphaMapping::Weight ? 1.0 - pr.pos() : pr.pos();
  double alpha_neg = mapping == AlphaMapping::Weight ? 1.0 - pr.neg() : pr.neg();
  return dempster_combine(simple_bba(theta, pos, alpha_pos), simple_bba(theta, neg, alpha_neg));
}

// --- file formats -----------------------------------------------------------

/// TSV `word<TAB>tag<TAB>pos<TAB>neg<TAB>neut` with a mandatory header row.
inline PolarityLexicon parse_lexicon(std::string_view data, std::string_view source = "lexicon") {
  PolarityLexicon lexicon;
  auto rows = text::lines(data);
  if (rows.empty()) throw Error(ErrorKind::Parse, std::string(source) + ": missing header row");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto fields = text::split(row.content, '\t');
    if (fields.size() != 5) {
      throw Error(ErrorKind::Parse, text::where(source, row.number) + ": expected 5 tab-separated fields");
    }
    auto word = text::trim(fields[0]);
    if (word.empty()) throw Error(ErrorKind::Parse, text::where(source, row.number) + ": empty word");
    double pos = text::parse_double(fields[2], source, row.number);
    double neg = text::parse_double(fields[3], source, row.number);
    double neut = text::parse_double(fields[4], source, row.number);
    try {
      lexicon.add(word, parse_pos_tag(fields[1]), OpinionDistribution(pos, neg, neut));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, text::where(source, row.number) + ": " + e.what());
    }
  }
  return lexicon;
}

/// Records `user_id<TAB>timestamp<TAB>token/tag token/tag ...`. An empty
/// timestamp field is allowed. The tag follows the last slash of a token.
inline std::vector<Message> parse_messages(std::string_view data, std::string_view source = "messages") {
  std::vector<Message> out;
  for (const auto& row : text::lines(data)) {
    auto fields = text::split(row.content, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorKind::Parse, text::where(source, row.number) + ": expected user, timestamp, tokens");
    }
    Message msg;
    msg.author = std::string(text::trim(fields[0]));
    if (msg.author.empty()) throw Error(ErrorKind::Parse, text::where(source, row.number) + ": empty user id");
    if (!text::trim(fields[1]).empty()) msg.timestamp = text::parse_int(fields[1], source, row.number);
    if (fields.size() == 3) {
      for (auto tok : text::split(text::trim(fields[2]), ' ')) {
        if (tok.empty()) continue;
        auto slash = tok.rfind('/');
        if (slash == std::string_view::npos || slash == 0) {
          throw Error(ErrorKind::Parse,
                      text::where(source, row.number) + ": token '" + std::string(tok) + "' lacks a /tag");
        }
        msg.tokens.push_back({std::string(tok.substr(0, slash)), parse_pos_tag(tok.substr(slash + 1))});
      }
    }
    out.push_back(std::move(msg));
  }
  return out;
}

}  // namespace evinf
