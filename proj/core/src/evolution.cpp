#include "sadovskii/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

double max_speed(const std::vector<Velocity>& v) {
  double m = 0.0;
  for (const Velocity& u : v) m = std::max(m, std::hypot(u.u1, u.u2));
  return m;
}

std::vector<Point> displaced(const std::vector<Point>& x, const std::vector<Velocity>& v,
                             double h) {
  std::vector<Point> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = {x[k].x1 + h * v[k].u1, x[k].x2 + h * v[k].u2};
  }
  return out;
}

// RK4 for the particles and, optionally, passive tracer points.
struct Stepper {
  ParticleEnsemble state;
  std::vector<Point> tracers;

  double advance(double dt, bool check_cfl) {
    ParticleEnsemble probe = state;
    auto stage = [&](const std::vector<Point>& px, const std::vector<Point>& tx,
                     std::vector<Velocity>& pv, std::vector<Velocity>& tv) {
      probe.positions = px;
      pv = particle_velocities(probe);
      tv = velocities_at(probe, tx);
    };
    std::vector<Velocity> k1, k2, k3, k4, t1, t2, t3, t4;
    stage(state.positions, tracers, k1, t1);
    const double umax = max_speed(k1);
    if (check_cfl && umax * dt >= state.blob_radius) {
      throw CflViolation("CFL violated: max|u| dt = " + std::to_string(umax * dt) +
                             " reaches the blob radius " + std::to_string(state.blob_radius),
                         0.5 * state.blob_radius / umax);
    }
    stage(displaced(state.positions, k1, 0.5 * dt), displaced(tracers, t1, 0.5 * dt), k2, t2);
    stage(displaced(state.positions, k2, 0.5 * dt), displaced(tracers, t2, 0.5 * dt), k3, t3);
    stage(displaced(state.positions, k3, dt), displaced(tracers, t3, dt), k4, t4);

    auto combine = [dt](std::vector<Point>& x, const std::vector<Velocity>& a,
                        const std::vector<Velocity>& b, const std::vector<Velocity>& c,
                        const std::vector<Velocity>& d) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        x[k].x1 += dt / 6.0 * (a[k].u1 + 2.0 * b[k].u1 + 2.0 * c[k].u1 + d[k].u1);
        x[k].x2 += dt / 6.0 * (a[k].u2 + 2.0 * b[k].u2 + 2.0 * c[k].u2 + d[k].u2);
      }
    };
    combine(state.positions, k1, k2, k3, k4);
    combine(tracers, t1, t2, t3, t4);
    for (Point& p : state.positions) {
      if (p.x2 < 0.0) {
        p.x2 = -p.x2;
        ++state.wall_reflections;
      }
    }
    for (Point& p : tracers) p.x2 = std::max(p.x2, 0.0);
    state.time += dt;
    return umax;
  }
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1);
}

// Splits edges longer than twice their reference length; children inherit it.
void refine(ContourPolygon& c, std::vector<double>& ref, std::size_t cap) {
  std::vector<Point> v;
  std::vector<double> r;
  const std::size_t n = c.vertices.size();
  v.reserve(n);
  r.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = c.vertices[k];
    const Point b = c.vertices[(k + 1) % n];
    v.push_back(a);
    r.push_back(ref[k]);
    const double len = distance(a, b);
    if (ref[k] > 0.0 && len > 2.0 * ref[k] && v.size() + (n - k) < cap) {
      const int pieces = std::min(64, static_cast<int>(std::ceil(len / ref[k])));
      for (int s = 1; s < pieces; ++s) {
        const double t = static_cast<double>(s) / pieces;
        v.push_back({a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)});
        r.push_back(ref[k]);
      }
    }
  }
  if (v.size() > cap) return;
  c.vertices = std::move(v);
  ref = std::move(r);
}

}  // namespace

void RunOptions::validate() const {
  if (!(T > 0.0)) throw InvalidArgument("T must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (record_every <= 0) throw InvalidArgument("record_every must be positive");
  if (!(lp_exponent >= 1.0)) throw InvalidArgument("lp exponent must be at least 1");
}

ParticleEnsemble step(const ParticleEnsemble& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be positive");
  if (state.empty()) {
    ParticleEnsemble out = state;
    out.time += dt;
    return out;
  }
  Stepper s{state, {}};
  s.advance(dt, false);
  return std::move(s.state);
}

double suggested_dt(const ParticleEnsemble& state) {
  const double umax = max_speed(particle_velocities(state));
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * state.blob_radius / umax;
}

double center_of_mass_rate(const ParticleEnsemble& state) {
  const double m = total_circulation(state);
  if (!(m > 0.0)) throw ZeroMass("center_of_mass_rate: zero total circulation");
  const std::vector<Velocity> v = particle_velocities(state);
  double s = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) s += state.circulations[k] * v[k].u1;
  return s / m;
}

double point_set_diameter(const std::vector<Point>& points) {
  if (points.size() < 2) return 0.0;
  std::vector<Point> p = points;
  std::sort(p.begin(), p.end(),
            [](const Point& a, const Point& b) { return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2); });
  std::vector<Point> hull(2 * p.size());
  std::size_t k = 0;
  for (const Point& q : p) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 0.0) --k;
    hull[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double d = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a) {
    for (std::size_t b = a + 1; b < hull.size(); ++b) d = std::max(d, distance(hull[a], hull[b]));
  }
  return d;
}

DiagnosticsRecord diagnose(const ParticleEnsemble& state, double lp_exponent,
                           const ContourPolygon* contour, double center_x1_at_start) {
  DiagnosticsRecord r;
  r.time = state.time;
  r.mass = total_circulation(state);
  r.impulse = particle_impulse(state);
  r.lp_norm = state.empty() ? 0.0 : particle_lp_norm(state, lp_exponent);
  r.energy = particle_energy(state);
  r.center_x1 = particle_center_x1(state);
  r.shift_tau = r.center_x1 - center_x1_at_start;
  if (contour != nullptr && contour->size() >= 3) r.perimeter = contour_perimeter(*contour);
  std::vector<Point> occupied;
  for (std::size_t k = 0; k < state.size(); ++k) {
    if (state.circulations[k] > 0.0) occupied.push_back(state.positions[k]);
  }
  r.support_diameter = point_set_diameter(occupied);
  return r;
}

DiagnosticsSeries run(const ParticleEnsemble& initial, const RunOptions& options,
                      std::optional<ContourPolygon> contour, ContourPolygon* final_contour,
                      ParticleEnsemble* final_state) {
  options.validate();
  initial.validate();
  DiagnosticsSeries series;
  series.config["T"] = std::to_string(options.T);
  series.config["dt"] = std::to_string(options.dt);
  series.config["record_every"] = std::to_string(options.record_every);
  series.config["blob_radius"] = std::to_string(initial.blob_radius);
  series.config["particles"] = std::to_string(initial.size());

  Stepper s{initial, {}};
  std::vector<double> ref;
  if (contour) {
    s.tracers = contour->vertices;
    const std::size_t n = s.tracers.size();
    ref.resize(n);
    for (std::size_t k = 0; k < n; ++k) ref[k] = distance(s.tracers[k], s.tracers[(k + 1) % n]);
  }
  ContourPolygon live = contour.value_or(ContourPolygon{});

  const double start_x1 = particle_center_x1(initial);
  series.records.push_back(diagnose(s.state, options.lp_exponent, contour ? &live : nullptr,
                                    start_x1));
  const double t0 = initial.time;
  const double t_end = t0 + options.T;
  const auto steps = static_cast<long>(std::ceil(options.T / options.dt - 1e-9));
  for (long n = 1; n <= steps; ++n) {
    const double h = std::min(options.dt, t_end - s.state.time);
    if (h <= 0.0) break;
    if (!s.state.empty()) s.advance(h, true);
    else s.state.time += h;
    if (n == steps) s.state.time = t_end;
    if (contour) {
      live.vertices = s.tracers;
      refine(live, ref, options.max_contour_vertices);
      s.tracers = live.vertices;
    }
    if (n % options.record_every == 0 || n == steps) {
      series.records.push_back(diagnose(s.state, options.lp_exponent, contour ? &live : nullptr,
                                        start_x1));
    }
  }
  if (final_contour != nullptr) *final_contour = live;
  if (final_state != nullptr) *final_state = s.state;
  return series;
}

ShiftEstimate estimate_shift(const DiagnosticsSeries& series) {
  if (series.records.size() < 3) throw InsufficientData("estimate_shift: fewer than 3 records");
  ShiftEstimate e;
  const double a0 = series.records.front().center_x1;
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(series.records.size());
  for (const DiagnosticsRecord& r : series.records) {
    const double tau = r.center_x1 - a0;
    e.times.push_back(r.time);
    e.tau.push_back(tau);
    st += r.time;
    sy += tau;
    stt += r.time * r.time;
    sty += r.time * tau;
  }
  const double den = n * stt - st * st;
  e.fitted_speed = den > 0.0 ? (n * sty - st * sy) / den : 0.0;
  return e;
}

void write_series_csv(const DiagnosticsSeries& series, std::ostream& out) {
  out << "time,mass,impulse,lp,energy,center_x1,tau,perimeter,diameter\n";
  out.precision(12);
  for (const DiagnosticsRecord& r : series.records) {
    out << r.time << ',' << r.mass << ',' << r.impulse << ',' << r.lp_norm << ',' << r.energy
        << ',' << r.center_x1 << ',' << r.shift_tau << ',';
    if (r.perimeter) out << *r.perimeter;
    out << ',' << r.support_diameter << '\n';
  }
}

void write_series_csv(const DiagnosticsSeries& series, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  write_series_csv(series, f);
}

}  // namespace sadovskii
