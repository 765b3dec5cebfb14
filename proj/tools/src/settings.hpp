#pragma once

#include <optional>
#include <string>

#include <boost/property_tree/ptree.hpp>

#include "sadovskii/error.hpp"

namespace sadovskii::cli {

/// Bad or missing configuration value; the message names the key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Sectioned `key = value` configuration. Keys are addressed as
/// "section.key"; top-level keys have no dot.
class Settings {
 public:
  Settings() = default;
  explicit Settings(boost::property_tree::ptree tree) : tree_(std::move(tree)) {}

  /// Parses an INI file. Throws ConfigError when it cannot be read.
  static Settings load(const std::string& path);
  static Settings parse(const std::string& text);

  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] bool has_section(const std::string& section) const;

  void set(const std::string& key, const std::string& value);

  [[nodiscard]] double real(const std::string& key, double fallback) const;
  [[nodiscard]] int integer(const std::string& key, int fallback) const;
  [[nodiscard]] bool boolean(const std::string& key, bool fallback) const;
  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] std::optional<std::string> text(const std::string& key) const;

  [[nodiscard]] const boost::property_tree::ptree& tree() const { return tree_; }

 private:
  boost::property_tree::ptree tree_;
};

}  // namespace sadovskii::cli
