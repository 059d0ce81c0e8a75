#pragma once

#include <spapprox/cli/specs.hpp>

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spapprox::cli {

/// A config problem, carrying the 1-based line it refers to (0 when unknown).
class ConfigError : public Error {
public:
  ConfigError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  [[nodiscard]] int line() const noexcept { return line_; }

private:
  int line_;
};

/// A YAML mapping whose keys must all be consumed; anything left over is rejected.
class ConfigSection {
public:
  ConfigSection(YAML::Node node, std::string where) : node_(std::move(node)), where_(std::move(where)) {
    if (!node_.IsMap()) {
      throw ConfigError(line_of(node_), where_ + " must be a mapping");
    }
  }

  [[nodiscard]] bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  template <class T>
  [[nodiscard]] T get(const std::string& key, const T& fallback) {
    const auto value = take(key);
    return value ? convert<T>(*value, key) : fallback;
  }

  template <class T>
  [[nodiscard]] T require(const std::string& key) {
    const auto value = take(key);
    if (!value) {
      throw ConfigError(line_of(node_), where_ + ": missing required key '" + key + "'");
    }
    return convert<T>(*value, key);
  }

  template <class T>
  [[nodiscard]] std::vector<T> list(const std::string& key, const std::vector<T>& fallback) {
    const auto value = take(key);
    if (!value) {
      return fallback;
    }
    if (value->IsScalar()) {
      return {convert<T>(*value, key)};
    }
    if (!value->IsSequence()) {
      throw ConfigError(line_of(*value), "'" + key + "' must be a value or a list");
    }
    std::vector<T> out;
    for (const auto& item : *value) {
      out.push_back(convert<T>(item, key));
    }
    return out;
  }

  /// tau values, accepting expressions such as 3pi/4.
  [[nodiscard]] std::vector<double> tau_list(const std::string& key, const std::vector<double>& fallback) {
    const auto raw = list<std::string>(key, {});
    if (raw.empty()) {
      return fallback;
    }
    std::vector<double> out;
    for (const auto& s : raw) {
      try {
        out.push_back(parse_tau(s));
      } catch (const SpecError& e) {
        throw ConfigError(line_of(node_[key]), e.what());
      }
    }
    return out;
  }

  [[nodiscard]] int line(const std::string& key) const { return line_of(node_[key]); }

  /// Throws on the first key that no getter asked for.
  void finish() const {
    for (const auto& entry : node_) {
      const auto key = entry.first.as<std::string>();
      if (!consumed_.contains(key)) {
        throw ConfigError(line_of(entry.first), where_ + ": unknown key '" + key + "'");
      }
    }
  }

private:
  static int line_of(const YAML::Node& node) {
    return node && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
  }

  std::optional<YAML::Node> take(const std::string& key) {
    consumed_.insert(key);
    const YAML::Node value = node_[key];
    if (!value || value.IsNull()) {
      return std::nullopt;
    }
    return value;
  }

  template <class T>
  static T convert(const YAML::Node& value, const std::string& key) {
    try {
      return value.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(line_of(value), "'" + key + "' has the wrong type");
    }
  }

  YAML::Node node_;
  std::string where_;
  std::set<std::string> consumed_;
};

[[nodiscard]] inline YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.mark.line + 1, e.msg);
  }
}

[[nodiscard]] inline YAML::Node load_yaml_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError(0, "cannot open config '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.mark.line + 1, e.msg);
  }
}

} // namespace spapprox::cli
