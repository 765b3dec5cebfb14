#include "sadovskii/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sadovskii/error.hpp"
#include "sadovskii/kernel.hpp"

namespace sadovskii {

IdentityReport compare(std::string name, double lhs, double rhs, double tol, double abs_scale) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tol;
  r.abs_err = std::abs(lhs - rhs);
  if (std::abs(rhs) <= 1e-9 * abs_scale) {
    r.rel_err = abs_scale > 0.0 ? r.abs_err / abs_scale : r.abs_err;
  } else {
    r.rel_err = r.abs_err / std::abs(rhs);
  }
  r.pass = std::isfinite(r.rel_err) && r.rel_err <= tol;
  return r;
}

double pohozaev_prediction(double p, double W, double mu, double gamma, double mass) {
  const double c = std::isinf(p) ? 0.75 : (3.0 * p - 4.0) / (4.0 * p - 4.0);
  return c * W * mu + 0.5 * gamma * mass;
}

std::vector<IdentityReport> pohozaev_check(const DipoleProfile& profile, double tol) {
  if (!profile.converged) throw NonConverged("pohozaev_check: profile did not converge");
  const double p = effective_p(profile);
  const double wmu = profile.W * profile.mu;
  std::vector<IdentityReport> out;
  out.push_back(compare("pohozaev", profile.energy.penalized,
                        pohozaev_prediction(p, profile.W, profile.mu, profile.gamma, profile.mass),
                        tol, wmu));
  if (!std::isinf(p)) {
    double s = 0.0;
    for (double v : profile.field.values()) {
      if (v > 0.0) s += std::pow(v / profile.lambda, p);
    }
    const double lhs = profile.lambda * s * profile.field.spec().cell_area();
    out.push_back(compare("pohozaev_lp", lhs, p / (2.0 * p - 2.0) * wmu, tol, wmu));
  }
  return out;
}

double traveling_speed_formula(const GridField& field) {
  const double m = field_mass(field);
  if (!(m > 0.0)) throw ZeroMass("traveling_speed_formula: zero-mass field");
  const GridSpec& g = field.spec();
  struct Cell {
    double x1, x2, w;
  };
  std::vector<Cell> cells;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double w = field.at(i, j);
      if (w > 0.0) cells.push_back({g.center_x1(i), g.center_x2(j), w});
    }
  }
  // The direct part of the kernel is odd and cancels; only the image part remains.
  double acc = 0.0;
  for (const Cell& a : cells) {
    double inner = 0.0;
    for (const Cell& b : cells) {
      inner += b.w * cell_log_gradient_weight(a.x1 - b.x1, a.x2 + b.x2, g.cell).u2;
    }
    acc += a.w * inner;
  }
  return acc * g.cell_area() / (2.0 * kPi) / m;
}

IdentityReport touching_check(const DipoleProfile& profile) {
  const double m = field_mass(profile.field);
  if (!(m > 0.0)) throw ZeroMass("touching_check: zero-mass profile");
  const double u1 = velocity_eval(profile.field, {0.0, 0.0}).u1;
  IdentityReport r;
  r.name = "touching";
  r.lhs = u1;
  r.rhs = 2.0 * profile.W;
  r.abs_err = std::abs(r.lhs - r.rhs);
  r.rel_err = r.rhs != 0.0 ? r.abs_err / std::abs(r.rhs) : r.abs_err;
  r.tolerance = 0.0;
  r.pass = profile.gamma == 0.0 && u1 > r.rhs;
  if (profile.W > 0.0) {
    r.extras["u1_over_W"] = u1 / profile.W;
    r.extras["comoving_ratio"] = (u1 - profile.W) / profile.W;
  }
  const GridSpec& g = profile.field.spec();
  double peak = 0.0;
  for (double v : profile.field.values()) peak = std::max(peak, v);
  double radius = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (profile.field.at(i, j) <= 1e-12 * peak) {
        radius = std::min(radius, std::hypot(g.center_x1(i), g.center_x2(j)));
      }
    }
  }
  if (!std::isfinite(radius)) radius = g.height();
  r.extras["touching_radius"] = profile.gamma > 0.0 ? 0.0 : radius;
  return r;
}

std::vector<IdentityReport> scaling_check(const DipoleProfile& a, const DipoleProfile& b,
                                          double tol_speed, double tol_energy) {
  if (a.mode != Mode::patch || b.mode != Mode::patch) {
    throw InvalidArgument("scaling_check: both profiles must be patch-mode");
  }
  if (!(b.mu > 0.0) || !(b.W > 0.0) || !(b.energy.kinetic > 0.0)) {
    throw InvalidArgument("scaling_check: reference profile is degenerate");
  }
  const double ratio = a.mu / b.mu;
  std::vector<IdentityReport> out;
  out.push_back(compare("scaling_speed", a.W / b.W, std::cbrt(ratio), tol_speed));
  out.push_back(compare("scaling_energy", a.energy.kinetic / b.energy.kinetic,
                        std::pow(ratio, 4.0 / 3.0), tol_energy));
  return out;
}

std::vector<double> axis_profile(const GridField& field) {
  const GridSpec& g = field.spec();
  if (!g.is_centered()) throw InvalidArgument("axis_profile: grid must be centered");
  std::vector<double> col(g.ny);
  for (int j = 0; j < g.ny; ++j) col[j] = field.at(g.nx / 2, j);
  return col;
}

double exponent_fit_samples(const std::vector<double>& s, const std::vector<double>& w) {
  if (s.size() != w.size()) throw InvalidArgument("exponent_fit: sample sizes differ");
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] > 0.0) || !(w[k] > 0.0)) continue;
    const double x = std::log(s[k]);
    const double y = std::log(w[k]);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 4) throw InsufficientData("exponent_fit: fewer than 4 positive samples");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double exponent_fit(const DipoleProfile& profile) {
  const GridSpec& g = profile.field.spec();
  const std::vector<double> col = axis_profile(profile.field);
  std::vector<double> s, w;
  for (int j = 2; j <= 9 && j < g.ny; ++j) {
    s.push_back(g.center_x2(j));
    w.push_back(col[j]);
  }
  return exponent_fit_samples(s, w);
}

}  // namespace sadovskii
