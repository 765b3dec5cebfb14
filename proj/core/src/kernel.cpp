#include "sadovskii/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

// Antiderivative with d2A/(du dv) = log(u^2 + v^2).
double log_corner(double u, double v) {
  double a = -3.0 * u * v;
  if (u != 0.0 && v != 0.0) a += u * v * std::log(u * u + v * v);
  if (u != 0.0) a += u * u * std::atan(v / u);
  if (v != 0.0) a += v * v * std::atan(u / v);
  return a;
}

// Antiderivative with d2F/(du dv) = u / (u^2 + v^2).
double gradient_corner(double u, double v) {
  double f = -v;
  if (v != 0.0) f += 0.5 * v * std::log(u * u + v * v);
  if (u != 0.0) f += u * std::atan(v / u);
  return f;
}

template <typename Corner>
double corner_sum(Corner&& corner, double d1, double d2, double side) {
  const double h = 0.5 * side;
  const double u0 = d1 - h, u1 = d1 + h;
  const double v0 = d2 - h, v1 = d2 + h;
  return corner(u1, v1) - corner(u0, v1) - corner(u1, v0) + corner(u0, v0);
}

bool is_near(double d1, double d2, double side) {
  // The half-cell margin keeps grid offsets off the cutoff, where roundoff would pick the rule.
  return std::max(std::abs(d1), std::abs(d2)) < (kNearCells + 0.5) * side;
}

}  // namespace

double green_eval(const Point& x, const Point& y) {
  const double d1 = x.x1 - y.x1;
  const double d2 = x.x2 - y.x2;
  const double r2 = d1 * d1 + d2 * d2;
  if (r2 == 0.0) {
    throw SingularEvaluation("green_eval: coincident points; use cell quadrature");
  }
  if (x.x2 <= 0.0 || y.x2 <= 0.0) return 0.0;
  return std::log1p(4.0 * x.x2 * y.x2 / r2) / (4.0 * kPi);
}

double cell_log_integral(double d1, double d2, double side) {
  return 0.5 * corner_sum(log_corner, d1, d2, side);
}

Velocity cell_log_gradient(double d1, double d2, double side) {
  const double g1 = corner_sum(gradient_corner, d1, d2, side);
  const double g2 = corner_sum([](double u, double v) { return gradient_corner(v, u); },
                               d1, d2, side);
  return {g1, g2};
}

double cell_log_weight(double d1, double d2, double side) {
  if (is_near(d1, d2, side)) return cell_log_integral(d1, d2, side);
  return side * side * 0.5 * std::log(d1 * d1 + d2 * d2);
}

Velocity cell_log_gradient_weight(double d1, double d2, double side) {
  if (is_near(d1, d2, side)) return cell_log_gradient(d1, d2, side);
  const double r2 = d1 * d1 + d2 * d2;
  const double a = side * side / r2;
  return {a * d1, a * d2};
}

double stream_eval(const GridField& field, const Point& x) {
  const GridSpec& g = field.spec();
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double y2 = g.center_x2(j);
    for (int i = 0; i < g.nx; ++i) {
      const double w = field.at(i, j);
      if (w == 0.0) continue;
      const double d1 = x.x1 - g.center_x1(i);
      acc += w * (cell_log_weight(d1, x.x2 + y2, g.cell) -
                  cell_log_weight(d1, x.x2 - y2, g.cell));
    }
  }
  return acc / (2.0 * kPi);
}

Velocity velocity_eval(const GridField& field, const Point& x) {
  const GridSpec& g = field.spec();
  double u1 = 0.0, u2 = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double y2 = g.center_x2(j);
    for (int i = 0; i < g.nx; ++i) {
      const double w = field.at(i, j);
      if (w == 0.0) continue;
      const double d1 = x.x1 - g.center_x1(i);
      const Velocity img = cell_log_gradient_weight(d1, x.x2 + y2, g.cell);
      const Velocity dir = cell_log_gradient_weight(d1, x.x2 - y2, g.cell);
      u1 += w * (img.u2 - dir.u2);
      u2 -= w * (img.u1 - dir.u1);
    }
  }
  const double c = 1.0 / (2.0 * kPi);
  if (x.x2 == 0.0) u2 = 0.0;
  return {c * u1, c * u2};
}

double green_pnorm_moment(const Point& x, double q) {
  if (!(q > 2.0)) {
    throw DivergentMoment("green_pnorm_moment: the moment diverges for q <= 2");
  }
  if (x.x2 <= 0.0) return 0.0;

  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kDepth = 12;
  constexpr double kTol = 1e-11;
  const double x2 = x.x2;

  // Radial integral along direction phi, panel by panel with doubling radii.
  auto radial = [&](double phi) {
    const double s = std::sin(phi);
    const double rho_max =
        s < 0.0 ? x2 / -s : std::numeric_limits<double>::infinity();
    auto integrand = [&](double rho) {
      const double y2 = x2 + rho * s;
      if (y2 <= 0.0) return 0.0;
      const double g = std::log1p(4.0 * x2 * y2 / (rho * rho)) / (4.0 * kPi);
      return rho * std::pow(g, q);
    };
    double total = 0.0;
    double lo = 0.0;
    double hi = std::min(x2, rho_max);
    while (lo < rho_max) {
      const double part = gauss_kronrod<double, 21>::integrate(integrand, lo, hi, kDepth, kTol);
      total += part;
      if (hi >= rho_max) break;
      if (lo > 0.0 && std::abs(part) < 1e-12 * std::abs(total)) break;
      lo = hi;
      hi = std::min(2.0 * hi, rho_max);
      if (lo > 1e12 * x2) break;
    }
    return total;
  };

  const double upper = gauss_kronrod<double, 21>::integrate(radial, 0.0, kPi, kDepth, 1e-10);
  const double lower = gauss_kronrod<double, 21>::integrate(radial, kPi, 2.0 * kPi, kDepth, 1e-10);
  return upper + lower;
}

}  // namespace sadovskii
