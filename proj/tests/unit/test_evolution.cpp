#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "sadovskii/error.hpp"
#include "sadovskii/evolution.hpp"
#include "sadovskii/kernel.hpp"
#include "sadovskii/lamb.hpp"

using namespace sadovskii;

namespace {

ParticleEnsemble lamb_ensemble(int ny) {
  const LambParams lp;
  return discretize(lamb_dipole(lp, lamb_grid(lp, 2 * ny, ny)).field);
}

ParticleEnsemble single(double x1, double x2, double gamma, double delta) {
  ParticleEnsemble e;
  e.positions = {{x1, x2}};
  e.circulations = {gamma};
  e.areas = {1.0};
  e.blob_radius = delta;
  return e;
}

// Free-space blob velocity summed over an explicit two-signed ensemble.
Velocity free_space(const std::vector<Point>& pts, const std::vector<double>& gam, double delta,
                    const Point& x) {
  Velocity u;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double d1 = x.x1 - pts[k].x1, d2 = x.x2 - pts[k].x2;
    const double s = d1 * d1 + d2 * d2 + delta * delta;
    const double f = (d1 * d1 + d2 * d2 + 2 * delta * delta) / (s * s);
    u.u1 += -gam[k] * d2 * f / (2 * kPi);
    u.u2 += gam[k] * d1 * f / (2 * kPi);
  }
  return u;
}

}  // namespace

TEST(Discretize, UnitSquareCirculation) {
  const GridSpec g = GridSpec::centered(8, 8, 0.25);
  GridField f(g);
  for (int j = 2; j < 6; ++j) {
    for (int i = 2; i < 6; ++i) f.set(i, j, 1.0);
  }
  const ParticleEnsemble e = discretize(f);
  EXPECT_EQ(e.size(), 16u);
  EXPECT_DOUBLE_EQ(total_circulation(e), 1.0);
  EXPECT_DOUBLE_EQ(e.blob_radius, 0.5);
}

TEST(Discretize, ImpulsePreservedWhenCoarsened) {
  const LambParams lp;
  const GridField f = lamb_dipole(lp, lamb_grid(lp, 96, 48)).field;
  const ParticleEnsemble e = discretize(f, 300);
  EXPECT_LT(e.size(), discretize(f).size());
  EXPECT_NEAR(particle_impulse(e) / field_impulse(f), 1.0, 1e-3);
  EXPECT_NEAR(total_circulation(e) / field_mass(f), 1.0, 1e-12);
}

TEST(Discretize, ZeroFieldThrows) {
  EXPECT_THROW(discretize(GridField(GridSpec::centered(8, 4, 0.5))), InvalidArgument);
}

TEST(Step, SingleParticleRidesItsImage) {
  const double h = 0.7, gamma = 1.3, delta = 0.01, dt = 0.05;
  const ParticleEnsemble e = single(0.2, h, gamma, delta);
  // Image at distance 2h; the algebraic blob factor applied to r^2 = 4 h^2.
  const double r2 = 4 * h * h;
  const double u = gamma / (2 * kPi) * 2 * h * (r2 + 2 * delta * delta) /
                   ((r2 + delta * delta) * (r2 + delta * delta));
  const ParticleEnsemble n = step(e, dt);
  EXPECT_NEAR(n.positions[0].x1, 0.2 + u * dt, 1e-15);
  EXPECT_DOUBLE_EQ(n.positions[0].x2, h);
  EXPECT_NEAR(u, gamma / (4 * kPi * h), 1e-8);
  EXPECT_DOUBLE_EQ(n.time, dt);
}

TEST(Step, EmptyEnsemble) {
  ParticleEnsemble e;
  e.blob_radius = 0.1;
  EXPECT_TRUE(step(e, 0.1).empty());
}

TEST(Step, TranslationEquivariant) {
  ParticleEnsemble e;
  e.positions = {{-0.3, 0.5}, {0.3, 0.7}, {0.1, 0.2}};
  e.circulations = {1.0, 0.5, 0.8};
  e.areas = {0.01, 0.01, 0.01};
  e.blob_radius = 0.1;
  ParticleEnsemble moved = e;
  for (auto& p : moved.positions) p.x1 += 4.0;
  for (int k = 0; k < 10; ++k) {
    e = step(e, 0.01);
    moved = step(moved, 0.01);
  }
  for (std::size_t k = 0; k < e.size(); ++k) {
    EXPECT_NEAR(moved.positions[k].x1 - 4.0, e.positions[k].x1, 1e-12);
    EXPECT_NEAR(moved.positions[k].x2, e.positions[k].x2, 1e-12);
  }
}

TEST(Velocity, ImageMethodEqualsMirroredEnsemble) {
  const ParticleEnsemble e = lamb_ensemble(12);
  std::vector<Point> pts;
  std::vector<double> gam;
  for (std::size_t k = 0; k < e.size(); ++k) {
    pts.push_back(e.positions[k]);
    gam.push_back(e.circulations[k]);
    pts.push_back(mirror(e.positions[k]));
    gam.push_back(-e.circulations[k]);
  }
  for (const Point& x : {Point{0.1, 0.2}, Point{-0.7, 0.9}, Point{1.5, 0.3}, Point{0.4, 0.0}}) {
    const Velocity a = velocity_eval(e, x);
    const Velocity b = free_space(pts, gam, e.blob_radius, x);
    EXPECT_NEAR(a.u1, b.u1, 1e-12);
    EXPECT_NEAR(a.u2, b.u2, 1e-12);
  }
  EXPECT_NEAR(velocity_eval(e, {0.4, 0.0}).u2, 0.0, 1e-15);
}

TEST(Run, LambTranslatesAtItsSpeed) {
  const ParticleEnsemble e = lamb_ensemble(16);
  RunOptions o;
  o.T = 2.0;
  o.dt = suggested_dt(e);
  o.record_every = 5;
  const DiagnosticsSeries s = run(e, o);
  EXPECT_NEAR(s.records.back().time, 2.0, 1e-12);
  EXPECT_NEAR(s.records.back().shift_tau / 2.0, 1.0, 0.02);
  EXPECT_NEAR(estimate_shift(s).fitted_speed, 1.0, 0.02);
  const double i0 = s.records.front().impulse, i1 = s.records.back().impulse;
  EXPECT_LT(std::abs(i1 - i0) / i0, 5e-3);
  const double e0 = s.records.front().energy, e1 = s.records.back().energy;
  EXPECT_LT(std::abs(e1 - e0) / e0, 1e-2);
  for (std::size_t k = 1; k < s.records.size(); ++k) EXPECT_GT(s.records[k].time, s.records[k - 1].time);
}

TEST(Run, ZeroCirculationIsFrozen) {
  ParticleEnsemble e;
  e.positions = {{0.0, 0.5}, {0.3, 0.8}};
  e.circulations = {0.0, 0.0};
  e.areas = {0.1, 0.1};
  e.blob_radius = 0.1;
  RunOptions o;
  o.T = 1.0;
  o.dt = 0.1;
  ParticleEnsemble last;
  const DiagnosticsSeries s = run(e, o, std::nullopt, nullptr, &last);
  for (const auto& r : s.records) {
    EXPECT_EQ(r.mass, 0.0);
    EXPECT_EQ(r.impulse, 0.0);
    EXPECT_EQ(r.energy, 0.0);
    EXPECT_EQ(r.support_diameter, 0.0);
  }
  EXPECT_TRUE(last.positions[1] == e.positions[1]);
  EXPECT_EQ(estimate_shift(s).fitted_speed, 0.0);
}

TEST(Run, CflViolationCarriesSuggestion) {
  const ParticleEnsemble e = lamb_ensemble(8);
  RunOptions o;
  o.T = 1.0;
  o.dt = 1.0;
  try {
    run(e, o);
    FAIL() << "expected CflViolation";
  } catch (const CflViolation& err) {
    EXPECT_GT(err.suggested_dt(), 0.0);
    EXPECT_LT(err.suggested_dt(), e.blob_radius);
  }
}

TEST(Run, ContourIsCoAdvectedAndRefined) {
  const ParticleEnsemble e = lamb_ensemble(12);
  ContourPolygon c;
  for (int k = 0; k < 32; ++k) {
    const double t = 2.0 * kPi * k / 32;
    c.vertices.push_back({0.3 * std::cos(t), 0.5 + 0.3 * std::sin(t)});
  }
  const double ref = distance(c.vertices[0], c.vertices[1]);
  RunOptions o;
  o.T = 1.0;
  o.dt = suggested_dt(e);
  o.record_every = 4;
  ContourPolygon last;
  const DiagnosticsSeries s = run(e, o, c, &last);
  for (const auto& r : s.records) ASSERT_TRUE(r.perimeter.has_value());
  EXPECT_GE(last.size(), c.size());
  for (std::size_t k = 0; k < last.size(); ++k) {
    EXPECT_LE(distance(last.vertices[k], last.vertices[(k + 1) % last.size()]), 2.0 * ref * (1 + 1e-9));
  }
}

TEST(CenterOfMassRate, LambSpeed) {
  const ParticleEnsemble e = lamb_ensemble(16);
  EXPECT_NEAR(center_of_mass_rate(e), 1.0, 0.02);
}

TEST(CenterOfMassRate, TranslationAndScaling) {
  ParticleEnsemble e = lamb_ensemble(10);
  const double r = center_of_mass_rate(e);
  ParticleEnsemble moved = e;
  for (auto& p : moved.positions) p.x1 += 5.0;
  EXPECT_NEAR(center_of_mass_rate(moved), r, 1e-12);
  for (auto& c : e.circulations) c *= 3.0;
  EXPECT_NEAR(center_of_mass_rate(e), 3.0 * r, 1e-12);
}

TEST(CenterOfMassRate, ZeroCirculationThrows) {
  ParticleEnsemble e = single(0, 1, 0.0, 0.1);
  EXPECT_THROW(center_of_mass_rate(e), ZeroMass);
}

TEST(Shift, OffsetDropsOut) {
  ParticleEnsemble e = lamb_ensemble(10);
  RunOptions o;
  o.T = 0.5;
  o.dt = suggested_dt(e);
  const DiagnosticsSeries a = run(e, o);
  for (auto& p : e.positions) p.x1 += 5.0;
  const DiagnosticsSeries b = run(e, o);
  const ShiftEstimate sa = estimate_shift(a), sb = estimate_shift(b);
  ASSERT_EQ(sa.tau.size(), sb.tau.size());
  for (std::size_t k = 0; k < sa.tau.size(); ++k) EXPECT_NEAR(sa.tau[k], sb.tau[k], 1e-10);
}

TEST(Shift, TooFewRecordsThrow) {
  DiagnosticsSeries s;
  s.records.resize(2);
  EXPECT_THROW(estimate_shift(s), InsufficientData);
}

TEST(Diameter, HullOfSquare) {
  EXPECT_NEAR(point_set_diameter({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(point_set_diameter({{0, 0}}), 0.0);
}

TEST(SeriesCsv, HeaderAndEmptyPerimeter) {
  DiagnosticsSeries s;
  s.records.resize(1);
  std::ostringstream out;
  write_series_csv(s, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "time,mass,impulse,lp,energy,center_x1,tau,perimeter,diameter");
  EXPECT_NE(text.find(",,"), std::string::npos);
}
