#include "settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

namespace sadovskii::cli {

namespace pt = boost::property_tree;

namespace {

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Trailing "; comment" is not stripped by the INI reader.
std::string strip_comment(const std::string& s) {
  const auto pos = s.find_first_of(";#");
  return trimmed(pos == std::string::npos ? s : s.substr(0, pos));
}

pt::ptree::path_type path_of(const std::string& key) { return {key, '.'}; }

}  // namespace

Settings Settings::load(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("cannot read config: " + std::string(e.what()));
  }
  return Settings(std::move(tree));
}

Settings Settings::parse(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("cannot parse config: " + std::string(e.what()));
  }
  return Settings(std::move(tree));
}

bool Settings::has(const std::string& key) const {
  return tree_.get_child_optional(path_of(key)).has_value();
}

bool Settings::has_section(const std::string& section) const {
  auto child = tree_.get_child_optional(path_of(section));
  return child && !child->empty();
}

void Settings::set(const std::string& key, const std::string& value) {
  tree_.put(path_of(key), value);
}

std::optional<std::string> Settings::text(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(path_of(key));
  if (!v) return std::nullopt;
  return strip_comment(*v);
}

std::string Settings::text(const std::string& key, const std::string& fallback) const {
  return text(key).value_or(fallback);
}

double Settings::real(const std::string& key, double fallback) const {
  auto v = text(key);
  if (!v) return fallback;
  double out = 0.0;
  const char* end = v->data() + v->size();
  auto [ptr, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected a number, got '" + *v + "'");
  }
  return out;
}

int Settings::integer(const std::string& key, int fallback) const {
  auto v = text(key);
  if (!v) return fallback;
  int out = 0;
  const char* end = v->data() + v->size();
  auto [ptr, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + *v + "'");
  }
  return out;
}

bool Settings::boolean(const std::string& key, bool fallback) const {
  auto v = text(key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + *v + "'");
}

}  // namespace sadovskii::cli
