#pragma once

#include <map>
#include <string>
#include <vector>

#include "sadovskii/grid_field.hpp"
#include "sadovskii/solver.hpp"

namespace sadovskii {

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  /// Secondary measurements (ratios, radii, fitted constants).
  std::map<std::string, double> extras;
};

/// Relative comparison of lhs against rhs. When |rhs| <= abs_scale * 1e-9,
/// the test switches to abs_err <= tol * abs_scale.
IdentityReport compare(std::string name, double lhs, double rhs, double tol,
                       double abs_scale = 0.0);

/// Right side of the Pohozaev identity: c(p) W mu + gamma mass / 2 with
/// c(p) = (3p - 4) / (4p - 4), and c = 3/4 for p = infinity.
double pohozaev_prediction(double p, double W, double mu, double gamma, double mass);

/// Energy identity, plus (regular mode) the companion relation
/// lambda^(1-p) ||w||_p^p = p / (2p - 2) W mu.
/// Throws NonConverged for a non-converged profile.
std::vector<IdentityReport> pohozaev_check(const DipoleProfile& profile, double tol);

/// Speed W from the image double integral divided by the mass.
/// Throws ZeroMass for a zero field.
double traveling_speed_formula(const GridField& field);

/// u1(0, 0) against 2W. Extras: the ratio u1/W, the co-moving ratio
/// (u1 - W)/W and the radius of the largest half-disc inside the support.
/// Profiles with gamma > 0 are reported as not touching.
IdentityReport touching_check(const DipoleProfile& profile);

/// Speed and energy ratios of two patch profiles against (mu_a/mu_b)^(1/3)
/// and (mu_a/mu_b)^(4/3).
std::vector<IdentityReport> scaling_check(const DipoleProfile& a, const DipoleProfile& b,
                                          double tol_speed, double tol_energy);

/// Least-squares slope of log w(0, s) against log s over cell rows 2..9.
/// Throws InsufficientData with fewer than 4 positive samples.
double exponent_fit(const DipoleProfile& profile);

/// Column of cells adjacent to x1 = 0 (x1 = cell/2), bottom to top.
std::vector<double> axis_profile(const GridField& field);

/// Slope fit on explicit samples; exposed for synthetic checks.
double exponent_fit_samples(const std::vector<double>& s, const std::vector<double>& w);

}  // namespace sadovskii
