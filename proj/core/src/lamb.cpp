#include "sadovskii/lamb.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sadovskii/error.hpp"

namespace sadovskii {

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw InvalidArgument("bessel_j: order must be 0 or 1");
  if (!(x >= 0.0)) throw InvalidArgument("bessel_j: x must be nonnegative");
  return std::cyl_bessel_j(static_cast<double>(order), x);
}

double bessel_j1_first_zero() {
  static const double root = [] {
    double lo = 3.0, hi = 4.5;
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      (bessel_j(1, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

void LambParams::validate() const {
  if (!(speed_U > 0.0) || !std::isfinite(speed_U)) throw InvalidArgument("speed_U must be positive");
  if (!(radius_a > 0.0) || !std::isfinite(radius_a)) {
    throw InvalidArgument("radius_a must be positive");
  }
}

double LambParams::wavenumber() const { return bessel_j1_first_zero() / radius_a; }

double LambParams::amplitude() const {
  const double k = wavenumber();
  return 2.0 * speed_U * k / std::abs(bessel_j(0, k * radius_a));
}

double LambParams::vorticity(const Point& x) const {
  const double r = std::hypot(x.x1, x.x2);
  if (r >= radius_a || r == 0.0 || x.x2 <= 0.0) return 0.0;
  return amplitude() * bessel_j(1, wavenumber() * r) * x.x2 / r;
}

double LambParams::stream(const Point& x) const {
  const double r = std::hypot(x.x1, x.x2);
  if (r == 0.0) return 0.0;
  const double s = x.x2 / r;
  if (r >= radius_a) return speed_U * radius_a * radius_a / r * s;
  const double k = wavenumber();
  return amplitude() / (k * k) * bessel_j(1, k * r) * s + speed_U * r * s;
}

GridSpec lamb_grid(const LambParams& params, int nx, int ny, double height_factor) {
  params.validate();
  return GridSpec::centered(nx, ny, height_factor * params.radius_a / ny);
}

DipoleProfile lamb_dipole(const LambParams& params, const GridSpec& grid) {
  params.validate();
  grid.validate();
  if (!grid.is_centered()) throw InvalidArgument("lamb_dipole: grid must be centered");
  if (params.radius_a >= grid.height() || params.radius_a >= 0.5 * grid.width()) {
    throw OutOfBounds("lamb_dipole: the dipole disc does not fit inside the grid");
  }
  GridField f(grid);
  auto v = f.values_mut();
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      v[grid.index(i, j)] = params.vorticity(grid.center(i, j));
    }
  }
  DipoleProfile prof;
  prof.field = std::move(f);
  prof.mode = Mode::regular;
  prof.p = 2.0;
  const double k = params.wavenumber();
  prof.lambda = k * k;
  prof.W = params.speed_U;
  prof.gamma = 0.0;
  prof.converged = true;
  prof.nu = std::numeric_limits<double>::infinity();
  refresh_diagnostics(prof);
  return prof;
}

std::vector<IdentityReport> lamb_validate(const LambValidation& config) {
  config.params.validate();
  if (config.resolutions.empty()) throw InvalidArgument("lamb_validate: no resolutions");
  std::vector<IdentityReport> out;
  std::vector<double> residuals;
  DipoleProfile finest;
  for (const auto& [nx, ny] : config.resolutions) {
    const GridSpec g = lamb_grid(config.params, nx, ny, config.height_factor);
    DipoleProfile prof = lamb_dipole(config.params, g);
    const std::string tag = std::to_string(nx) + "x" + std::to_string(ny);
    IdentityReport r = compare("fixed_point_residual_" + tag, prof.residual, 0.0,
                               config.residual_tol, 1.0);
    r.pass = prof.residual < config.residual_tol;
    out.push_back(r);
    residuals.push_back(prof.residual);
    finest = std::move(prof);
  }
  for (std::size_t k = 1; k < residuals.size(); ++k) {
    IdentityReport r;
    r.name = "residual_decreasing_" + std::to_string(k);
    r.lhs = residuals[k];
    r.rhs = residuals[k - 1];
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.rel_err = r.rhs != 0.0 ? r.abs_err / r.rhs : 0.0;
    r.pass = residuals[k] < residuals[k - 1];
    out.push_back(r);
  }
  for (IdentityReport& r : pohozaev_check(finest, config.pohozaev_tol)) out.push_back(r);
  out.push_back(touching_check(finest));
  return out;
}

}  // namespace sadovskii
