#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "report.hpp"
#include "sadovskii/evolution.hpp"
#include "sadovskii/field_io.hpp"
#include "sadovskii/identities.hpp"

namespace sadovskii::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTolPohozaev = 0.05;
constexpr double kTolSpeedFormula = 0.03;
constexpr double kTolExponent = 0.1;
constexpr double kTolImpulse = 0.005;
constexpr double kTolEnergy = 0.01;
constexpr double kTolShift = 0.02;
constexpr double kGrowthFactor = 0.25;

void print_reports(const std::vector<IdentityReport>& reports, std::ostream& out) {
  for (const auto& r : reports) out << "  " << format_line(r) << '\n';
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

std::vector<IdentityReport> profile_identities(const DipoleProfile& prof, const Settings& s) {
  std::vector<IdentityReport> out;
  if (prof.converged) {
    for (auto& r : pohozaev_check(prof, s.real("identities.tol_pohozaev", kTolPohozaev))) {
      out.push_back(std::move(r));
    }
  }
  if (prof.mass > 0.0) {
    out.push_back(compare("traveling_speed", traveling_speed_formula(prof.field), prof.W,
                          s.real("identities.tol_speed", kTolSpeedFormula)));
    out.push_back(touching_check(prof));
  }
  if (prof.mode == Mode::regular && prof.gamma == 0.0 && prof.mass > 0.0) {
    try {
      out.push_back(compare("exponent", exponent_fit(prof), 1.0 / (prof.p - 1.0),
                            s.real("identities.tol_exponent", kTolExponent)));
    } catch (const InsufficientData&) {
      // Support too thin near the axis for a fit; nothing to report.
    }
  }
  return out;
}

// Linear interpolation of the perimeter column at time t.
double perimeter_at(const DiagnosticsSeries& series, double t) {
  const auto& rs = series.records;
  if (t <= rs.front().time) return *rs.front().perimeter;
  for (std::size_t k = 1; k < rs.size(); ++k) {
    if (rs[k].time >= t) {
      const double f = (t - rs[k - 1].time) / (rs[k].time - rs[k - 1].time);
      return (1.0 - f) * *rs[k - 1].perimeter + f * *rs[k].perimeter;
    }
  }
  return *rs.back().perimeter;
}

IdentityReport floor_report(std::string name, double value, double floor, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = value;
  r.rhs = floor;
  r.abs_err = std::max(0.0, floor - value);
  r.rel_err = floor != 0.0 ? r.abs_err / std::abs(floor) : r.abs_err;
  r.tolerance = tol;
  r.pass = value >= floor;
  return r;
}

struct Source {
  ParticleEnsemble ensemble;
  std::optional<ContourPolygon> contour;
  double speed = 0.0;
  std::string label;
};

DipoleProfile load_profile(const std::string& report_path) {
  const json j = read_json(report_path);
  DipoleProfile prof = profile_from_json(j);
  if (!j.contains("field_file")) throw ConfigError("report '" + report_path + "' has no field_file");
  const fs::path field = fs::path(report_path).parent_path() / j.at("field_file").get<std::string>();
  prof.field = read_field_csv(field.string());
  return prof;
}

Source make_source(const Settings& s, std::ostream& out) {
  const std::string kind = s.text("evolve.source", "lamb");
  const int target = s.integer("evolve.target_count", 0);
  const double blob = s.real("evolve.blob_factor", kDefaultBlobFactor);
  Source src;
  src.label = kind;
  if (kind == "lamb") {
    const LambParams lp = lamb_params(s);
    const int ny = s.integer("evolve.lamb_ny", 32);
    if (ny < 4) throw ConfigError("key 'evolve.lamb_ny' must be at least 4");
    const DipoleProfile prof = lamb_dipole(lp, lamb_grid(lp, 2 * ny, ny));
    src.ensemble = discretize(prof.field, target, blob);
    src.speed = lp.speed_U;
    return src;
  }
  if (kind != "profile" && kind != "tailed") {
    throw ConfigError("key 'evolve.source' must be lamb, profile or tailed, got '" + kind + "'");
  }
  auto path = s.text("evolve.profile");
  if (!path) throw ConfigError("key 'evolve.profile' is required for source " + kind);
  const DipoleProfile prof = load_profile(*path);
  src.speed = prof.W;
  if (kind == "profile") {
    src.ensemble = discretize(prof.field, target, blob);
    return src;
  }
  if (prof.mode != Mode::patch) throw ConfigError("source tailed needs a patch-mode profile");
  const ContourPolygon base = patch_contour(prof.field, prof.lambda);
  const TailParams tp = tail_params(s, base);
  const TailConstruction tc = build_tailed_contour(base, tp);
  out << "tail: L=" << tp.tail_length << " epsilon=" << tp.epsilon << " a=" << tp.spike_center
      << " delta=" << tp.spike_halfwidth << " |zeta-l|_1=" << tc.width_l1
      << " vertices=" << tc.contour.size() << '\n';
  src.ensemble = discretize(tc.contour, prof.field.spec().cell, prof.lambda, target, blob);
  src.contour = tc.contour;
  return src;
}

}  // namespace

fs::path output_dir(const Settings& s) {
  fs::path dir = s.text("output.dir", ".");
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') dir = env;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::vector<std::pair<int, int>> parse_resolutions(const std::string& text) {
  static const std::regex item(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  std::vector<std::pair<int, int>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string piece = text.substr(start, comma - start);
    std::smatch m;
    if (!std::regex_match(piece, m, item)) {
      throw ConfigError("key 'oracle.resolutions': malformed entry '" + piece + "'");
    }
    const int nx = std::stoi(m[1]);
    const int ny = std::stoi(m[2]);
    if (nx < 4 || ny < 2 || nx % 2 != 0) {
      throw ConfigError("key 'oracle.resolutions': bad size '" + piece + "'");
    }
    out.emplace_back(nx, ny);
    start = comma + 1;
  }
  return out;
}

SolveConfig solve_config(const Settings& s) {
  SolveConfig c;
  c.mode = parse_mode(s.text("solver.mode", "regular"));
  c.p = s.real("solver.p", c.p);
  c.mu = s.real("solver.mu", c.mu);
  c.nu = s.real("solver.nu", c.nu);
  c.lambda = s.real("solver.lambda", c.lambda);
  c.max_iter = s.integer("solver.max_iter", c.max_iter);
  c.tol_field = s.real("solver.tol_field", c.tol_field);
  c.tol_multiplier = s.real("solver.tol_multiplier", c.tol_multiplier);
  c.relaxation = s.real("solver.relaxation", c.relaxation);
  c.adaptive_domain = s.boolean("solver.adaptive_domain", c.adaptive_domain);
  c.max_regrids = s.integer("solver.max_regrids", c.max_regrids);
  const int nx = s.integer("grid.nx", c.grid.nx);
  const int ny = s.integer("grid.ny", c.grid.ny);
  const double cell = s.real("grid.cell", c.grid.cell);
  if (nx < 4 || nx % 2 != 0) throw ConfigError("key 'grid.nx' must be even and at least 4");
  if (ny < 2) throw ConfigError("key 'grid.ny' must be at least 2");
  if (!(cell > 0.0)) throw ConfigError("key 'grid.cell' must be positive");
  c.grid = GridSpec::centered(nx, ny, cell);
  if (auto init = s.text("solver.initial")) c.initial = read_field_csv(*init);
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[solver] ") + e.what());
  }
  return c;
}

LambParams lamb_params(const Settings& s) {
  LambParams lp;
  lp.speed_U = s.real("lamb.U", lp.speed_U);
  lp.radius_a = s.real("lamb.a", lp.radius_a);
  try {
    lp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[lamb] ") + e.what());
  }
  return lp;
}

LambValidation oracle_config(const Settings& s) {
  LambValidation v;
  v.params = lamb_params(s);
  if (auto res = s.text("oracle.resolutions")) v.resolutions = parse_resolutions(*res);
  v.height_factor = s.real("oracle.height_factor", v.height_factor);
  v.residual_tol = s.real("oracle.tol_residual", v.residual_tol);
  v.pohozaev_tol = s.real("oracle.tol_pohozaev", v.pohozaev_tol);
  if (!(v.height_factor > 1.0)) throw ConfigError("key 'oracle.height_factor' must exceed 1");
  return v;
}

TailParams tail_params(const Settings& s, const ContourPolygon& base) {
  double top = 0.0;
  for (const Point& p : base.vertices) top = std::max(top, p.x2);
  const double half = max_abs_x1(base);
  TailParams tp;
  tp.tail_length = s.real("tail.tail_length", 2.0 * half);
  tp.spike_center = s.real("tail.spike_center", 0.4 * top);
  tp.epsilon = s.real("tail.epsilon", 0.08 * half);
  tp.spike_halfwidth = s.real("tail.spike_halfwidth", 0.6 * tp.epsilon);
  tp.support_height = s.real("tail.support_height", 0.0);
  tp.smoothing_width = s.real("tail.smoothing_width", 0.0);
  try {
    tp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[tail] ") + e.what());
  }
  return tp;
}

int command_solve(const Settings& s, std::ostream& out) {
  const SolveConfig c = solve_config(s);
  const DipoleProfile prof = solve_dipole(c);
  const auto identities = profile_identities(prof, s);

  const fs::path dir = output_dir(s);
  const std::string name = s.text("output.name", "profile");
  const std::string field_file = name + "_field.csv";
  write_field_csv(prof.field, (dir / field_file).string());

  json report = profile_json(prof);
  report["command"] = "solve";
  report["seed"] = s.integer("seed", 0);
  report["tol_field"] = c.tol_field;
  report["tol_multiplier"] = c.tol_multiplier;
  report["field_file"] = field_file;
  report["identities"] = to_json(identities);
  const fs::path report_path = dir / (name + ".json");
  write_json(report, report_path.string());

  const GridSpec& g = prof.field.spec();
  out << "solve: mode=" << to_string(prof.mode) << " p=" << prof.p << " converged=" << prof.converged
      << " iterations=" << prof.iterations << '\n'
      << "  grid " << g.nx << 'x' << g.ny << " cell=" << g.cell << '\n'
      << "  W=" << prof.W << " gamma=" << prof.gamma << " mu=" << prof.mu << " mass=" << prof.mass
      << '\n'
      << "  energy=" << prof.energy.kinetic << " penalized=" << prof.energy.penalized
      << " residual=" << prof.residual << '\n';
  print_reports(identities, out);
  out << "wrote " << report_path.string() << '\n';
  return prof.converged ? kExitOk : kExitFailed;
}

int command_oracle(const Settings& s, std::ostream& out) {
  const LambValidation v = oracle_config(s);
  const auto reports = lamb_validate(v);
  const fs::path dir = output_dir(s);
  json report = {{"command", "oracle"},
                 {"U", v.params.speed_U},
                 {"a", v.params.radius_a},
                 {"seed", s.integer("seed", 0)},
                 {"identities", to_json(reports)}};
  const fs::path path = dir / (s.text("output.name", "oracle") + ".json");
  write_json(report, path.string());
  out << "oracle: U=" << v.params.speed_U << " a=" << v.params.radius_a << '\n';
  print_reports(reports, out);
  out << "wrote " << path.string() << '\n';
  return all_pass(reports) ? kExitOk : kExitFailed;
}

int command_evolve(const Settings& s, std::ostream& out) {
  Source src = make_source(s, out);
  RunOptions o;
  o.T = s.real("evolve.T", 5.0);
  o.record_every = s.integer("evolve.record_every", 10);
  o.lp_exponent = s.real("evolve.lp", 2.0);
  o.dt = s.real("evolve.dt", 0.0);
  if (o.dt == 0.0) o.dt = suggested_dt(src.ensemble);
  try {
    o.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[evolve] ") + e.what());
  }

  out << "evolve: source=" << src.label << " particles=" << src.ensemble.size()
      << " blob_radius=" << src.ensemble.blob_radius << " dt=" << o.dt << " T=" << o.T << '\n';
  ContourPolygon final_contour;
  ParticleEnsemble final_state;
  const DiagnosticsSeries series = run(src.ensemble, o, src.contour, &final_contour, &final_state);
  const ShiftEstimate shift = estimate_shift(series);
  const auto& first = series.records.front();
  const auto& last = series.records.back();

  std::vector<IdentityReport> checks;
  checks.push_back(compare("impulse_conservation", last.impulse, first.impulse,
                           s.real("evolve.tol_impulse", kTolImpulse)));
  checks.push_back(compare("energy_conservation", last.energy, first.energy,
                           s.real("evolve.tol_energy", kTolEnergy)));
  if (!src.contour) {
    checks.push_back(compare("shift_speed", shift.fitted_speed, src.speed,
                             s.real("evolve.tol_speed", kTolShift)));
  } else {
    // A tailed start carries O(epsilon) extra impulse, so its speed is only
    // reported; the checks are on the perimeter.
    const double t0 = s.real("evolve.monotone_after", 0.0);
    int drops = 0;
    for (std::size_t k = 1; k < series.records.size(); ++k) {
      if (series.records[k].time > t0 && !(*series.records[k].perimeter > *series.records[k - 1].perimeter)) {
        ++drops;
      }
    }
    IdentityReport mono = compare("perimeter_monotone", drops, 0.0, 0.0, 1.0);
    mono.extras["after_time"] = t0;
    checks.push_back(mono);
    const double ta = std::min(s.real("evolve.growth_start", 2.0), o.T);
    const double tb = std::min(s.real("evolve.growth_end", 5.0), o.T);
    if (tb > ta) {
      const double rate = (perimeter_at(series, tb) - perimeter_at(series, ta)) / (tb - ta);
      const double factor = s.real("evolve.growth_factor", kGrowthFactor);
      IdentityReport g = floor_report("perimeter_growth", rate, factor * src.speed, factor);
      g.extras["window_start"] = ta;
      g.extras["window_end"] = tb;
      checks.push_back(g);
    }
  }

  const fs::path dir = output_dir(s);
  const std::string name = s.text("output.name", "series");
  const fs::path csv = dir / (name + ".csv");
  write_series_csv(series, csv.string());
  json report = {{"command", "evolve"},
                 {"source", src.label},
                 {"seed", s.integer("seed", 0)},
                 {"particles", src.ensemble.size()},
                 {"blob_radius", src.ensemble.blob_radius},
                 {"dt", o.dt},
                 {"T", o.T},
                 {"reference_speed", src.speed},
                 {"fitted_speed", shift.fitted_speed},
                 {"wall_reflections", final_state.wall_reflections},
                 {"series_file", csv.filename().string()},
                 {"identities", to_json(checks)}};
  if (src.contour) {
    const std::string contour_file = name + "_contour.csv";
    write_contour_csv(final_contour, (dir / contour_file).string());
    report["contour_file"] = contour_file;
  }
  const fs::path path = dir / (name + ".json");
  write_json(report, path.string());

  out << "  impulse " << first.impulse << " -> " << last.impulse << "  energy " << first.energy
      << " -> " << last.energy << '\n'
      << "  fitted shift speed " << shift.fitted_speed << " (reference " << src.speed << ")\n";
  print_reports(checks, out);
  out << "wrote " << csv.string() << '\n';
  return all_pass(checks) ? kExitOk : kExitFailed;
}

int command_verify(const Settings& s, const std::string& report_path, std::ostream& out) {
  const json j = read_json(report_path);
  DipoleProfile prof = load_profile(report_path);
  const DipoleProfile stored = prof;
  refresh_diagnostics(prof);

  std::map<std::string, double> tolerances;
  if (j.contains("identities")) {
    for (const auto& row : j.at("identities")) {
      tolerances[row.at("name").get<std::string>()] = identity_from_json(row).tolerance;
    }
  }
  Settings local = s;
  if (tolerances.count("pohozaev")) {
    local.set("identities.tol_pohozaev", std::to_string(tolerances["pohozaev"]));
  }
  if (tolerances.count("traveling_speed")) {
    local.set("identities.tol_speed", std::to_string(tolerances["traveling_speed"]));
  }
  if (tolerances.count("exponent")) {
    local.set("identities.tol_exponent", std::to_string(tolerances["exponent"]));
  }

  std::vector<IdentityReport> checks;
  const double scale = std::max(stored.mass, 1e-300);
  checks.push_back(compare("stored_mass", prof.mass, stored.mass, 1e-9, scale));
  checks.push_back(compare("stored_impulse", prof.mu, stored.mu, 1e-9, std::abs(stored.mu)));
  checks.push_back(compare("stored_residual", prof.residual, stored.residual, 1e-6, 1.0));
  const double tol_field = j.value("tol_field", 1e-6);
  IdentityReport conv = floor_report("fixed_point", -prof.residual, -std::max(1e-2, 100 * tol_field), 0.0);
  conv.lhs = prof.residual;
  conv.rhs = std::max(1e-2, 100 * tol_field);
  conv.tolerance = conv.rhs;
  checks.push_back(conv);
  for (auto& r : profile_identities(prof, local)) {
    // The touching row is informative for gamma > 0 and not a verification target.
    if (r.name == "touching" && prof.gamma > 0.0) continue;
    checks.push_back(std::move(r));
  }

  out << "verify: " << report_path << " mode=" << to_string(prof.mode) << " converged=" << prof.converged
      << '\n';
  print_reports(checks, out);
  return all_pass(checks) ? kExitOk : kExitFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling vortex dipoles in the half plane: solver, oracle and evolution"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  std::string seed;
  app.add_option("-c,--config", config_path, "INI configuration file");
  app.add_option("-o,--output-dir", out_dir, "output directory (environment variable wins)");
  app.add_option("--seed", seed, "seed for randomized checks");

  struct Flag {
    const char* name;
    const char* key;
  };
  std::map<std::string, std::string> values;
  std::vector<std::pair<const CLI::Option*, std::string>> bound;
  auto bind = [&](CLI::App* sub, std::initializer_list<Flag> flags) {
    for (const Flag& f : flags) {
      bound.emplace_back(sub->add_option(f.name, values[f.key], std::string("config key ") + f.key),
                         f.key);
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "maximize the penalized energy at fixed impulse");
  bind(solve, {{"--mode", "solver.mode"},
               {"--p", "solver.p"},
               {"--mu", "solver.mu"},
               {"--nu", "solver.nu"},
               {"--lambda", "solver.lambda"},
               {"--max-iter", "solver.max_iter"},
               {"--tol-field", "solver.tol_field"},
               {"--relaxation", "solver.relaxation"},
               {"--adaptive", "solver.adaptive_domain"},
               {"--initial", "solver.initial"},
               {"--nx", "grid.nx"},
               {"--ny", "grid.ny"},
               {"--cell", "grid.cell"},
               {"--name", "output.name"}});
  CLI::App* oracle = app.add_subcommand("oracle", "validate the solver identities on the Lamb dipole");
  bind(oracle, {{"--U", "lamb.U"},
                {"--a", "lamb.a"},
                {"--resolutions", "oracle.resolutions"},
                {"--name", "output.name"}});
  CLI::App* evolve = app.add_subcommand("evolve", "time-evolve a dipole with vortex blobs");
  bind(evolve, {{"--source", "evolve.source"},
                {"--profile", "evolve.profile"},
                {"--T", "evolve.T"},
                {"--dt", "evolve.dt"},
                {"--record-every", "evolve.record_every"},
                {"--target-count", "evolve.target_count"},
                {"--blob-factor", "evolve.blob_factor"},
                {"--lamb-ny", "evolve.lamb_ny"},
                {"--U", "lamb.U"},
                {"--a", "lamb.a"},
                {"--epsilon", "tail.epsilon"},
                {"--tail-length", "tail.tail_length"},
                {"--spike-center", "tail.spike_center"},
                {"--spike-halfwidth", "tail.spike_halfwidth"},
                {"--name", "output.name"}});
  CLI::App* verify = app.add_subcommand("verify", "recheck a solve report and its field dump");
  std::string report_path;
  verify->add_option("report", report_path, "report JSON written by solve")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    Settings s;
    if (!config_path.empty()) s = Settings::load(config_path);
    const bool from_file = !config_path.empty();
    for (const auto& [opt, key] : bound) {
      if (opt->count() > 0) s.set(key, values[key]);
    }
    if (!out_dir.empty()) s.set("output.dir", out_dir);
    if (!seed.empty()) s.set("seed", seed);
    (void)s.integer("seed", 0);

    if (solve->parsed()) {
      if (from_file && !s.has_section("grid")) throw ConfigError("missing section [grid]");
      return command_solve(s, out);
    }
    if (oracle->parsed()) return command_oracle(s, out);
    if (evolve->parsed()) return command_evolve(s, out);
    if (verify->parsed()) return command_verify(s, report_path, out);
  } catch (const CflViolation& e) {
    err << "error: " << e.what() << " (suggested dt " << e.suggested_dt() << ")\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace sadovskii::cli
