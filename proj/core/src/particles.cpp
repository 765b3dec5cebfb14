#include "sadovskii/particles.hpp"

#include <algorithm>
#include <cmath>

#include "sadovskii/error.hpp"
#include "sadovskii/kernel.hpp"

namespace sadovskii {

namespace {
constexpr double kParticleFloor = 1e-12;
}  // namespace

void ParticleEnsemble::validate() const {
  if (circulations.size() != positions.size() || areas.size() != positions.size()) {
    throw InvalidArgument("ParticleEnsemble: array sizes differ");
  }
  if (!empty() && !(blob_radius > 0.0)) {
    throw InvalidArgument("ParticleEnsemble: blob radius must be positive");
  }
  for (std::size_t k = 0; k < size(); ++k) {
    if (!(circulations[k] >= 0.0)) throw InvalidArgument("ParticleEnsemble: negative circulation");
    if (!(areas[k] > 0.0)) throw InvalidArgument("ParticleEnsemble: nonpositive area");
    if (!(positions[k].x2 >= 0.0)) throw OutOfBounds("ParticleEnsemble: particle below the wall");
  }
}

ParticleEnsemble discretize(const GridField& source, int target_count, double blob_factor) {
  if (!(blob_factor > 0.0)) throw InvalidArgument("discretize: blob factor must be positive");
  const GridSpec& g = source.spec();
  double peak = 0.0;
  for (double v : source.values()) peak = std::max(peak, v);
  // Cells below roundoff relative to the peak (solver relaxation remnants) are dropped.
  const double floor = kParticleFloor * peak;
  std::size_t occupied = 0;
  for (double v : source.values()) occupied += v > floor ? 1 : 0;
  if (occupied == 0) throw InvalidArgument("discretize: empty source field");

  int b = 1;
  if (target_count > 0 && static_cast<std::size_t>(target_count) < occupied) {
    b = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(occupied) / target_count)));
  }
  ParticleEnsemble out;
  const double area = g.cell_area();
  for (int jb = 0; jb < g.ny; jb += b) {
    for (int ib = 0; ib < g.nx; ib += b) {
      double gam = 0.0, m1 = 0.0, m2 = 0.0, a = 0.0;
      for (int j = jb; j < std::min(jb + b, g.ny); ++j) {
        for (int i = ib; i < std::min(ib + b, g.nx); ++i) {
          const double w = source.at(i, j);
          if (w <= floor) continue;
          const double c = w * area;
          gam += c;
          m1 += c * g.center_x1(i);
          m2 += c * g.center_x2(j);
          a += area;
        }
      }
      if (gam <= 0.0) continue;
      out.positions.push_back({m1 / gam, m2 / gam});
      out.circulations.push_back(gam);
      out.areas.push_back(a);
    }
  }
  out.blob_radius = blob_factor * b * g.cell;
  return out;
}

ParticleEnsemble discretize(const ContourPolygon& contour, double cell, double strength,
                            int target_count, double blob_factor) {
  if (!(cell > 0.0)) throw InvalidArgument("discretize: cell must be positive");
  if (!(strength > 0.0)) throw InvalidArgument("discretize: strength must be positive");
  if (contour.size() < 3) throw InvalidArgument("discretize: empty contour");
  double top = 0.0;
  for (const Point& p : contour.vertices) top = std::max(top, p.x2);
  const double half = max_abs_x1(contour);
  const int nx = 2 * (static_cast<int>(std::ceil(half / cell)) + 2);
  const int ny = static_cast<int>(std::ceil(top / cell)) + 2;
  GridField f = rasterize(contour, GridSpec::centered(nx, ny, cell));
  f *= strength;
  return discretize(f, target_count, blob_factor);
}

double total_circulation(const ParticleEnsemble& state) {
  double s = 0.0;
  for (double c : state.circulations) s += c;
  return s;
}

double particle_impulse(const ParticleEnsemble& state) {
  double s = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) s += state.circulations[k] * state.positions[k].x2;
  return s;
}

double particle_center_x1(const ParticleEnsemble& state) {
  const double m = total_circulation(state);
  if (!(m > 0.0)) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) s += state.circulations[k] * state.positions[k].x1;
  return s / m;
}

double particle_lp_norm(const ParticleEnsemble& state, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("particle_lp_norm: p must be at least 1");
  double s = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double w = state.circulations[k] / state.areas[k];
    s += std::pow(w, p) * state.areas[k];
  }
  return std::pow(s, 1.0 / p);
}

double particle_energy(const ParticleEnsemble& state) {
  const double d = state.blob_radius;
  const std::size_t n = state.size();
  double s = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double ga = state.circulations[a];
    if (ga == 0.0) continue;
    double inner = 0.5 * ga * blob_green(state.positions[a], state.positions[a], d);
    for (std::size_t b = a + 1; b < n; ++b) {
      inner += state.circulations[b] * blob_green(state.positions[a], state.positions[b], d);
    }
    s += ga * inner;
  }
  return s;
}

Velocity velocity_eval(const ParticleEnsemble& state, const Point& x) {
  double u1 = 0.0, u2 = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double g = state.circulations[k];
    if (g == 0.0) continue;
    const Velocity v = blob_velocity(x, state.positions[k], state.blob_radius);
    u1 += g * v.u1;
    u2 += g * v.u2;
  }
  if (x.x2 == 0.0) u2 = 0.0;
  return {u1, u2};
}

std::vector<Velocity> particle_velocities(const ParticleEnsemble& state) {
  return velocities_at(state, state.positions);
}

std::vector<Velocity> velocities_at(const ParticleEnsemble& state, const std::vector<Point>& xs) {
  std::vector<Velocity> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = velocity_eval(state, xs[k]);
  return out;
}

}  // namespace sadovskii
