#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "settings.hpp"

namespace sadovskii::cli {

using nlohmann::json;

namespace {

// JSON has no infinities; the patch exponent is written as a string.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double as_number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("report: missing key '") + key + "'");
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError(std::string("report: key '") + key + "' is not a number");
}

}  // namespace

json to_json(const IdentityReport& r) {
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  return {{"name", r.name},         {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},   {"abs_err", number(r.abs_err)},
          {"rel_err", number(r.rel_err)}, {"tolerance", number(r.tolerance)},
          {"pass", r.pass},         {"extras", extras}};
}

IdentityReport identity_from_json(const json& j) {
  IdentityReport r;
  r.name = j.at("name").get<std::string>();
  r.lhs = as_number(j, "lhs");
  r.rhs = as_number(j, "rhs");
  r.abs_err = as_number(j, "abs_err");
  r.rel_err = as_number(j, "rel_err");
  r.tolerance = as_number(j, "tolerance");
  r.pass = j.at("pass").get<bool>();
  if (j.contains("extras")) {
    for (const auto& [k, v] : j.at("extras").items()) r.extras[k] = as_number(j.at("extras"), k.c_str());
  }
  return r;
}

json to_json(const std::vector<IdentityReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

json profile_json(const DipoleProfile& p) {
  const GridSpec& g = p.field.spec();
  return {{"mode", to_string(p.mode)},
          {"p", number(p.p)},
          {"effective_p", number(effective_p(p))},
          {"lambda", number(p.lambda)},
          {"W", number(p.W)},
          {"gamma", number(p.gamma)},
          {"mu", number(p.mu)},
          {"nu", number(p.nu)},
          {"mass", number(p.mass)},
          {"energy", number(p.energy.kinetic)},
          {"penalized_energy", number(p.energy.penalized)},
          {"residual", number(p.residual)},
          {"iterations", p.iterations},
          {"converged", p.converged},
          {"near_degenerate", p.near_degenerate},
          {"grid", {{"origin_x1", g.origin_x1}, {"nx", g.nx}, {"ny", g.ny}, {"cell", g.cell}}}};
}

DipoleProfile profile_from_json(const json& j) {
  DipoleProfile p;
  p.mode = parse_mode(j.at("mode").get<std::string>());
  p.p = as_number(j, "p");
  p.lambda = as_number(j, "lambda");
  p.W = as_number(j, "W");
  p.gamma = as_number(j, "gamma");
  p.mu = as_number(j, "mu");
  p.nu = as_number(j, "nu");
  p.mass = as_number(j, "mass");
  p.energy.kinetic = as_number(j, "energy");
  p.energy.penalized = as_number(j, "penalized_energy");
  p.residual = as_number(j, "residual");
  p.iterations = j.value("iterations", 0);
  p.converged = j.value("converged", false);
  p.near_degenerate = j.value("near_degenerate", false);
  return p;
}

std::string format_line(const IdentityReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %-30s lhs=%-14.8g rhs=%-14.8g rel=%-10.3e tol=%g",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.lhs, r.rhs, r.rel_err, r.tolerance);
  return buf;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace sadovskii::cli
