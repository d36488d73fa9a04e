#pragma once

// Key/value run configuration: `key = value` lines with `#` comments, merged
// over per-command defaults and overridden by flags. The resolved map is what
// the manifest echoes, so a manifest is itself a valid config file.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evinf/error.hpp"
#include "evinf/text.hpp"

namespace evinf::cli {

struct KeySpec {
  std::string name;
  std::string default_value;
  bool is_path = false;
};

class RunConfig {
 public:
  RunConfig(std::string command, std::vector<KeySpec> keys) : command_(std::move(command)), keys_(std::move(keys)) {
    for (const auto& k : keys_) values_[k.name] = k.default_value;
  }

  const std::string& command() const { return command_; }

  void load_file(const std::string& path) {
    auto data = text::read_file(path);
    std::set<std::string> seen;
    for (const auto& line : text::lines(data)) {
      auto eq = line.content.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorKind::Config, text::where(path, line.number) + ": expected key = value");
      std::string key(text::trim(line.content.substr(0, eq)));
      std::string value(unquote(text::trim(line.content.substr(eq + 1))));
      if (!seen.insert(key).second) throw Error(ErrorKind::Config, text::where(path, line.number) + ": duplicate key '" + key + "'");
      if (key == "command") {
        if (value != command_) {
          throw Error(ErrorKind::Usage, text::where(path, line.number) + ": config is for '" + value + "', not '" + command_ + "'");
        }
        continue;
      }
      set(key, value, text::where(path, line.number));
    }
  }

  /// `key=value` from the command line.
  void set_assignment(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Usage, "--set expects key=value, got '" + assignment + "'");
    set(std::string(text::trim(std::string_view(assignment).substr(0, eq))),
        std::string(text::trim(std::string_view(assignment).substr(eq + 1))), "--set");
  }

  void set(const std::string& key, const std::string& value, const std::string& where = "flag") {
    if (!values_.contains(key)) throw Error(ErrorKind::Config, where + ": unknown key '" + key + "' for " + command_);
    values_[key] = value;
  }

  /// Makes path-valued keys absolute so the manifest replays from any directory.
  void resolve_paths() {
    for (const auto& k : keys_) {
      auto& v = values_[k.name];
      if (!k.is_path || v.empty()) continue;
      std::vector<std::string> parts;
      for (auto part : text::split(v, ',')) {
        auto p = text::trim(part);
        if (!p.empty()) parts.push_back(std::filesystem::absolute(std::filesystem::path(p)).lexically_normal().string());
      }
      std::string joined;
      for (std::size_t i = 0; i < parts.size(); ++i) joined += (i ? "," : "") + parts[i];
      v = joined;
    }
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  std::string required(const std::string& key) const {
    const auto& v = str(key);
    if (v.empty()) throw Error(ErrorKind::Config, "missing required key '" + key + "' for " + command_);
    return v;
  }

  std::optional<std::string> optional_str(const std::string& key) const {
    const auto& v = str(key);
    if (v.empty()) return std::nullopt;
    return v;
  }

  double number(const std::string& key) const {
    try {
      return text::parse_double(str(key), key, 0);
    } catch (const Error&) {
      throw Error(ErrorKind::Config, "key '" + key + "' expects a number, got '" + str(key) + "'");
    }
  }

  double unit(const std::string& key) const {
    double v = number(key);
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::Config, "key '" + key + "' must lie in [0,1]");
    return v;
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (str(key).empty()) return std::nullopt;
    return number(key);
  }

  std::int64_t integer(const std::string& key) const {
    try {
      return text::parse_int(str(key), key, 0);
    } catch (const Error&) {
      throw Error(ErrorKind::Config, "key '" + key + "' expects an integer, got '" + str(key) + "'");
    }
  }

  std::size_t count(const std::string& key) const {
    auto v = integer(key);
    if (v < 0) throw Error(ErrorKind::Config, "key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
  }

  bool flag(const std::string& key) const {
    auto v = text::lower(str(key));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorKind::Config, "key '" + key + "' expects true or false, got '" + str(key) + "'");
  }

  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    for (auto part : text::split(str(key), ',')) {
      auto p = text::trim(part);
      if (!p.empty()) out.emplace_back(p);
    }
    return out;
  }

  std::string manifest() const {
    std::ostringstream out;
    out << "# evinf run manifest; replay with: evinf " << command_ << " --config <this file>\n";
    out << "command = " << command_ << '\n';
    for (const auto& k : keys_) {
      const auto& v = values_.at(k.name);
      out << k.name << " =" << (v.empty() ? "" : " ") << v << '\n';
    }
    return out.str();
  }

 private:
  static std::string_view unquote(std::string_view v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
  }

  std::string command_;
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> values_;
};

}  // namespace evinf::cli
