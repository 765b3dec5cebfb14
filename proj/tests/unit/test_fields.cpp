#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sadovskii/contour.hpp"
#include "sadovskii/energy.hpp"
#include "sadovskii/error.hpp"
#include "sadovskii/field_io.hpp"
#include "sadovskii/steiner.hpp"
#include "sadovskii/tail.hpp"

using namespace sadovskii;

namespace {

GridField indicator(const GridSpec& g, double x1a, double x1b, double x2a, double x2b) {
  GridField f(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Point c = g.center(i, j);
      if (c.x1 > x1a && c.x1 < x1b && c.x2 > x2a && c.x2 < x2b) f.set(i, j, 1.0);
    }
  }
  return f;
}

GridField random_field(const GridSpec& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GridField f(g);
  for (int j = 0; j < g.ny - 1; ++j) {
    for (int i = 1; i < g.nx - 1; ++i) f.set(i, j, u(rng) < 0.6 ? u(rng) : 0.0);
  }
  return f;
}

ContourPolygon square(double x0, double y0, double side) {
  ContourPolygon c;
  c.vertices = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
  return c;
}

ContourPolygon half_disc(double r, int n = 400) {
  ContourPolygon c;
  c.touches_axis = true;
  for (int k = 0; k <= n; ++k) {
    const double t = kPi * k / n;
    c.vertices.push_back({r * std::cos(t), k == n ? 0.0 : r * std::sin(t)});
  }
  return c;
}

std::vector<double> sorted_row(const GridField& f, int j) {
  std::vector<double> r;
  for (int i = 0; i < f.spec().nx; ++i) r.push_back(f.at(i, j));
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(GridNorms, Rectangle) {
  const GridSpec g = GridSpec::centered(16, 8, 0.25);
  const GridNorms n = grid_norms(indicator(g, -1, 1, 0, 1), 3.0);
  EXPECT_DOUBLE_EQ(n.mass, 2.0);
  EXPECT_DOUBLE_EQ(n.impulse, 1.0);
  EXPECT_NEAR(std::pow(n.lp_norm, 3.0), 2.0, 1e-13);
}

TEST(GridNorms, ZeroField) {
  const GridNorms n = grid_norms(GridField(GridSpec::centered(4, 2, 1.0)), 2.0);
  EXPECT_EQ(n.mass, 0.0);
  EXPECT_EQ(n.impulse, 0.0);
  EXPECT_EQ(n.lp_norm, 0.0);
}

TEST(GridNorms, Homogeneous) {
  std::mt19937 rng(0);
  const GridField f = random_field(GridSpec::centered(10, 6, 0.3), rng);
  const GridNorms a = grid_norms(f, 2.5), b = grid_norms(f * 3.0, 2.5);
  EXPECT_NEAR(b.mass, 3.0 * a.mass, 1e-12);
  EXPECT_NEAR(b.impulse, 3.0 * a.impulse, 1e-12);
  EXPECT_NEAR(b.lp_norm, 3.0 * a.lp_norm, 1e-12);
}

TEST(Steiner, RecentresRectangle) {
  const GridSpec g = GridSpec::centered(16, 8, 0.25);
  const GridField s = steiner_symmetrize(indicator(g, 0, 2, 0, 1));
  const GridField want = indicator(g, -1, 1, 0, 1);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(s.values()[k], want.values()[k]);
}

TEST(Steiner, MergesRowIntervals) {
  const GridSpec g = GridSpec::centered(16, 4, 0.25);
  const GridField f = indicator(g, 0, 1, 0, 0.25) + indicator(g, -2, -1, 0, 0.25);
  const GridField s = steiner_symmetrize(f);
  const GridField want = indicator(g, -1, 1, 0, 0.25);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(s.values()[k], want.values()[k]);
}

TEST(Steiner, PreservesRowsAndRaisesEnergy) {
  std::mt19937 rng(1);
  const GridSpec g = GridSpec::centered(20, 10, 0.1);
  const GridField f = random_field(g, rng);
  const GridField s = steiner_symmetrize(f);
  for (int j = 0; j < g.ny; ++j) EXPECT_EQ(sorted_row(f, j), sorted_row(s, j));
  EXPECT_EQ(field_impulse(s), field_impulse(f));
  EXPECT_GT(kinetic_energy(s), kinetic_energy(f));
}

TEST(Steiner, IdempotentAndMonotone) {
  std::mt19937 rng(2);
  const GridSpec g = GridSpec::centered(20, 10, 0.1);
  const GridField s = steiner_symmetrize(random_field(g, rng));
  const GridField t = steiner_symmetrize(s);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(s.values()[k], t.values()[k]);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = g.nx / 2; i + 1 < g.nx; ++i) EXPECT_GE(s.at(i, j), s.at(i + 1, j));
    for (int i = g.nx / 2 - 1; i > 0; --i) EXPECT_GE(s.at(i, j), s.at(i - 1, j));
  }
}

TEST(Steiner, MirrorAverageGivesDefinitionSymmetry) {
  std::mt19937 rng(3);
  const GridSpec g = GridSpec::centered(20, 10, 0.1);
  const GridField s = mirror_average(steiner_symmetrize(random_field(g, rng)));
  EXPECT_TRUE(is_steiner_symmetric(s));
}

TEST(Rasterize, GridAlignedSquareIsExact) {
  const GridSpec g = GridSpec::centered(8, 6, 0.5);
  const GridField f = rasterize(square(-0.5, 0.5, 1.0), g);
  const GridField want = indicator(g, -0.5, 0.5, 0.5, 1.5);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(f.values()[k], want.values()[k], 1e-14);
}

TEST(Rasterize, MassMatchesShoelace) {
  ContourPolygon c;
  for (int k = 0; k < 7; ++k) {
    const double t = 2.0 * kPi * k / 7;
    const double r = k % 2 ? 0.6 : 1.0;
    c.vertices.push_back({0.1 + r * std::cos(t), 1.5 + r * std::sin(t)});
  }
  const GridField f = rasterize(c, GridSpec::centered(128, 128, 0.025));
  EXPECT_NEAR(field_mass(f) / shoelace_area(c), 1.0, 1e-3);
}

TEST(Rasterize, EmptyPolygonGivesZero) {
  EXPECT_TRUE(rasterize(ContourPolygon{}, GridSpec::centered(8, 4, 0.5)).is_zero());
}

TEST(Rasterize, OutsideGridThrows) {
  EXPECT_THROW(rasterize(square(5.0, 0.5, 1.0), GridSpec::centered(8, 4, 0.5)), OutOfBounds);
}

TEST(Perimeter, UnitSquare) { EXPECT_DOUBLE_EQ(contour_perimeter(square(0, 1, 1)), 4.0); }

TEST(Perimeter, RegularPolygonApproachesCircle) {
  ContourPolygon c;
  for (int k = 0; k < 256; ++k) {
    const double t = 2.0 * kPi * k / 256;
    c.vertices.push_back({std::cos(t), 2.0 + std::sin(t)});
  }
  EXPECT_NEAR(contour_perimeter(c), 512.0 * std::sin(kPi / 256.0), 1e-12);
  EXPECT_NEAR(contour_perimeter(c) / (2.0 * kPi), 1.0, 1e-3);
}

TEST(Perimeter, DoubledVertexUnchanged) {
  ContourPolygon c = square(0, 1, 1);
  c.vertices.insert(c.vertices.begin() + 2, c.vertices[2]);
  EXPECT_DOUBLE_EQ(contour_perimeter(c), 4.0);
  EXPECT_TRUE(is_simple(c));
}

TEST(Perimeter, DegenerateThrows) {
  ContourPolygon c;
  c.vertices = {{0, 1}, {1, 1}};
  EXPECT_THROW(contour_perimeter(c), DegenerateGeometry);
}

TEST(Contour, SimplicityDetectsBowtie) {
  ContourPolygon c;
  c.vertices = {{0, 1}, {1, 2}, {1, 1}, {0, 2}};
  EXPECT_FALSE(is_simple(c));
  EXPECT_TRUE(is_simple(square(0, 1, 1)));
}

TEST(Contour, PatchContourOfRectangle) {
  const GridSpec g = GridSpec::centered(16, 8, 0.25);
  const ContourPolygon c = patch_contour(indicator(g, -1, 1, 0, 1), 1.0);
  EXPECT_TRUE(c.touches_axis);
  EXPECT_DOUBLE_EQ(max_abs_x1(c), 1.0);
  EXPECT_NEAR(half_width_at(c, 0.5), 1.0, 1e-14);
  EXPECT_TRUE(is_simple(c));
}

TEST(Tail, TransitionFunction) {
  EXPECT_DOUBLE_EQ(transition_H(0.0), 1.0);
  EXPECT_DOUBLE_EQ(transition_H(1.0), 0.0);
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    EXPECT_NEAR(transition_H(transition_H(x)), x, 1e-12);
    EXPECT_NEAR(std::exp(1.0 - 1.0 / x) + std::exp(1.0 - 1.0 / transition_H(x)), 1.0, 1e-12);
    EXPECT_LT(transition_H(x + 0.05), transition_H(x));
  }
}

TEST(Tail, BumpIntegral) {
  // Composite Simpson on (-1, 1); the bump is flat to all orders at the ends.
  const int n = 20000;
  double s = unit_bump(-1.0) + unit_bump(1.0);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * unit_bump(-1.0 + 2.0 * k / n);
  EXPECT_NEAR(unit_bump_integral(), s * (2.0 / n) / 3.0, 1e-10);
  EXPECT_DOUBLE_EQ(unit_bump(0.0), 1.0);
  EXPECT_EQ(unit_bump(1.0), 0.0);
}

TEST(Tail, ApexReachesTargetWidthExactly) {
  TailParams tp;
  tp.epsilon = 0.1;
  tp.tail_length = 2.0;
  tp.spike_center = 0.4;
  tp.spike_halfwidth = 0.05;
  const ContourPolygon base = half_disc(1.0);
  const TailConstruction tc = build_tailed_contour(base, tp);
  EXPECT_DOUBLE_EQ(max_abs_x1(tc.contour), 2.0);
  EXPECT_NEAR(tc.apex_height, 0.4, 0.05 + 1e-12);
  EXPECT_TRUE(is_simple(tc.contour));
  EXPECT_GT(shoelace_area(tc.contour), 0.0);
  EXPECT_LE(tc.width_l1, 5.0 * tp.epsilon);

  const GridSpec g = GridSpec::centered(400, 96, 0.0125);
  const double l1 = l1_distance(rasterize(tc.contour, g), rasterize(base, g));
  EXPECT_LE(l1, 5.0 * tp.epsilon);
}

TEST(Tail, SmallBudgetStaysNearBase) {
  TailParams tp;
  tp.epsilon = 0.004;
  tp.tail_length = 1.01;
  tp.spike_center = 0.4;
  tp.spike_halfwidth = 0.002;
  const ContourPolygon base = half_disc(1.0);
  const ContourPolygon c = make_tailed_contour(base, tp);
  const GridSpec g = GridSpec::centered(400, 96, 0.0125);
  EXPECT_LT(l1_distance(rasterize(c, g), rasterize(base, g)), 0.02 * shoelace_area(base));
}

TEST(Tail, DeltaConstraintViolationThrows) {
  TailParams tp;
  tp.epsilon = 0.1;
  tp.tail_length = 2.0;
  tp.spike_center = 0.4;
  tp.spike_halfwidth = 0.2;
  EXPECT_THROW(build_tailed_contour(half_disc(1.0), tp), InvalidArgument);
  tp.spike_halfwidth = 0.05;
  tp.spike_center = 0.1;
  EXPECT_THROW(build_tailed_contour(half_disc(1.0), tp), InvalidArgument);
}

TEST(FieldIo, RoundTrip) {
  std::mt19937 rng(4);
  const GridField f = random_field(GridSpec::centered(10, 6, 0.3), rng);
  std::stringstream ss;
  write_field_csv(f, ss);
  const GridField g = read_field_csv(ss);
  ASSERT_TRUE(g.spec() == f.spec());
  for (std::size_t k = 0; k < f.values().size(); ++k) EXPECT_EQ(g.values()[k], f.values()[k]);
}

TEST(FieldIo, ContourRoundTrip) {
  const ContourPolygon c = half_disc(0.7, 16);
  std::stringstream ss;
  write_contour_csv(c, ss);
  const ContourPolygon d = read_contour_csv(ss);
  EXPECT_TRUE(d.touches_axis);
  ASSERT_EQ(d.size(), c.size());
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_TRUE(d.vertices[k] == c.vertices[k]);
}

TEST(FieldIo, MalformedInputThrows) {
  std::stringstream ss("i,j,value\n1,2,3\n");
  EXPECT_THROW(read_field_csv(ss), ParseError);
}
