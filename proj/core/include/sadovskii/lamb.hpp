#pragma once

#include <utility>
#include <vector>

#include "sadovskii/grid_field.hpp"
#include "sadovskii/identities.hpp"
#include "sadovskii/solver.hpp"

namespace sadovskii {

/// J0 or J1 for x >= 0.
double bessel_j(int order, double x);

/// First positive zero of J1, found by bisection on bessel_j.
double bessel_j1_first_zero();

struct LambParams {
  double speed_U = 1.0;
  double radius_a = 1.0;

  void validate() const;
  /// k with k a equal to the first zero of J1.
  [[nodiscard]] double wavenumber() const;
  [[nodiscard]] double amplitude() const;
  /// Upper-half vorticity at x (zero outside the disc).
  [[nodiscard]] double vorticity(const Point& x) const;
  /// Exact stream function in the lab frame.
  [[nodiscard]] double stream(const Point& x) const;
};

/// Analytic dipole sampled at cell centers: p = 2, lambda = k^2, W = U, gamma = 0.
/// Throws OutOfBounds when the disc does not fit inside the grid.
DipoleProfile lamb_dipole(const LambParams& params, const GridSpec& grid);

/// Centered grid whose height is `height_factor` radii.
GridSpec lamb_grid(const LambParams& params, int nx, int ny, double height_factor = 1.25);

struct LambValidation {
  LambParams params;
  std::vector<std::pair<int, int>> resolutions{{96, 48}, {192, 96}};
  double height_factor = 1.25;
  double residual_tol = 1e-2;
  double pohozaev_tol = 0.03;
};

/// Residual per resolution, residual monotonicity, and Pohozaev and touching
/// reports at the finest resolution.
std::vector<IdentityReport> lamb_validate(const LambValidation& config);

}  // namespace sadovskii
