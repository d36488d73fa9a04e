#pragma once

// Small line-oriented parsing helpers shared by the file readers.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "evinf/error.hpp"

namespace evinf::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Location prefix for parse errors, e.g. "edges.csv:12".
inline std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

inline double parse_double(std::string_view field, std::string_view source, std::size_t line) {
  auto s = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::Parse, where(source, line) + ": expected a number, got '" + std::string(s) + "'");
  }
  return value;
}

inline std::int64_t parse_int(std::string_view field, std::string_view source, std::size_t line) {
  auto s = trim(field);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::Parse, where(source, line) + ": expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Fixed-precision formatting for human-facing report columns.
inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A data line with its 1-based line number.
struct Line {
  std::size_t number;
  std::string_view content;
};

/// Non-blank lines; lines whose first non-space character is '#' are
/// skipped when `comments` is set. A trailing '\r' is stripped.
inline std::vector<Line> lines(std::string_view data, bool comments = true) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= data.size()) {
    auto pos = data.find('\n', start);
    auto line = data.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto t = trim(line);
    if (!t.empty() && !(comments && t.front() == '#')) out.push_back({number, line});
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace evinf::text
