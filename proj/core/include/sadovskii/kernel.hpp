#pragma once

#include "sadovskii/geometry.hpp"
#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Dirichlet Green's function of the upper half-plane,
/// G(x, y) = log(1 + 4 x2 y2 / |x - y|^2) / (4 pi).
/// Throws SingularEvaluation when x == y.
double green_eval(const Point& x, const Point& y);

/// Exact integral of log|d - z| over the square |z1|, |z2| <= side/2.
double cell_log_integral(double d1, double d2, double side);

/// Exact integral of (d - z)/|d - z|^2 over the same square, i.e. the gradient
/// of cell_log_integral with respect to d.
Velocity cell_log_gradient(double d1, double d2, double side);

/// Cell-integrated log kernel: exact inside `near_cells` (max-norm offset in
/// cell units), midpoint rule outside. Every stream evaluation in the library
/// goes through this rule so point and grid evaluations agree.
double cell_log_weight(double d1, double d2, double side);

/// Gradient counterpart of cell_log_weight (same near/far rule).
Velocity cell_log_gradient_weight(double d1, double d2, double side);

inline constexpr double kNearCells = 6.0;

/// Stream function G[omega](x) by cell quadrature of the piecewise-constant field.
double stream_eval(const GridField& field, const Point& x);

/// Image-symmetric Biot-Savart velocity of a piecewise-constant field.
/// Exact cell integrals remove the 1/r singularity; u2 vanishes on the wall.
Velocity velocity_eval(const GridField& field, const Point& x);

/// Integral over the half-plane of G(x, y)^q dy, q > 2, by adaptive
/// Gauss-Kronrod quadrature in polar coordinates around x.
double green_pnorm_moment(const Point& x, double q);

/// High-order algebraic blob: the 1/r^2 factor of the point-vortex kernel is
/// replaced by (r^2 + 2 delta^2) / (r^2 + delta^2)^2.
inline double blob_factor(double r2, double delta) {
  const double d2 = delta * delta;
  const double s = r2 + d2;
  return (r2 + 2.0 * d2) / (s * s);
}

/// Free-space stream function of a unit blob, consistent with blob_factor.
inline double blob_stream(double r2, double delta) {
  const double s = r2 + delta * delta;
  return -(std::log(s) - delta * delta / s) / (4.0 * kPi);
}

/// Regularized half-plane Green's function of the blob method.
inline double blob_green(const Point& x, const Point& y, double delta) {
  const double d1 = x.x1 - y.x1;
  const double dm = x.x2 - y.x2;
  const double dp = x.x2 + y.x2;
  return blob_stream(d1 * d1 + dm * dm, delta) - blob_stream(d1 * d1 + dp * dp, delta);
}

/// Velocity induced at x by a unit blob at y and its negative image.
inline Velocity blob_velocity(const Point& x, const Point& y, double delta) {
  const double d1 = x.x1 - y.x1;
  const double dm = x.x2 - y.x2;
  const double dp = x.x2 + y.x2;
  const double fd = blob_factor(d1 * d1 + dm * dm, delta);
  const double fi = blob_factor(d1 * d1 + dp * dp, delta);
  const double c = 1.0 / (2.0 * kPi);
  return {c * (dp * fi - dm * fd), c * d1 * (fd - fi)};
}

}  // namespace sadovskii
