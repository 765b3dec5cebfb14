#pragma once

#include <optional>
#include <string>

#include "sadovskii/energy.hpp"
#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Regular mode maximizes E - (lambda/p) * int (w/lambda)^p over w >= 0;
/// patch mode maximizes E over w = lambda * indicator.
enum class Mode { regular, patch };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Regular: lambda * (psi - W x2 - gamma)_+^(1/(p-1)).
/// Patch: lambda * fraction of each cell where psi - W x2 - gamma > 0, using
/// the bilinear interpolant of psi (odd reflection below the wall) on
/// `subcells` x `subcells` pieces of each cell.
GridField apply_vorticity_map(const CellSamples& psi, double W, double gamma, double p,
                              double lambda, Mode mode, int subcells = 4);

/// Positive area fraction of a linear function on a triangle with vertex values a, b, c.
double triangle_positive_fraction(double a, double b, double c);

struct SolveConfig {
  Mode mode = Mode::regular;
  double p = 2.0;
  double mu = 1.0;
  double nu = 1.0;
  double lambda = 1.0;
  GridSpec grid = GridSpec::centered(128, 64, 0.05);
  int max_iter = 400;
  double tol_field = 1e-6;
  double tol_multiplier = 1e-6;
  double relaxation = 0.5;
  /// Regrid when the support nears the box edge or fills too little of it.
  bool adaptive_domain = true;
  int max_regrids = 24;
  /// Optional starting field; resampled onto `grid` when the grids differ.
  std::optional<GridField> initial;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct Multipliers {
  double W = 0.0;
  double gamma = 0.0;
  GridField field;
};

/// Finds W >= 0 and gamma >= 0 such that the mapped field has impulse mu and
/// either gamma = 0 with mass <= nu, or gamma > 0 with mass = nu.
/// Throws InfeasibleImpulse when no such pair yields a field that stays off
/// the left, right and top cell rings.
Multipliers solve_multipliers(const CellSamples& psi, const SolveConfig& config);

struct DipoleProfile {
  GridField field;
  Mode mode = Mode::regular;
  double p = 2.0;
  double lambda = 1.0;
  double W = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double nu = 1.0;
  double mass = 0.0;
  EnergyReport energy;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Set for regular mode with p close to 4/3.
  bool near_degenerate = false;
};

/// Exponent used by the Pohozaev coefficients: p, or infinity in patch mode.
double effective_p(const DipoleProfile& profile);

/// Relaxed fixed-point iteration with Steiner symmetrization and multiplier
/// re-solve each step. Non-convergence is reported through `converged`.
DipoleProfile solve_dipole(const SolveConfig& config);

/// Relative L1 distance between the field and its image under the map with
/// the profile's own multipliers. Throws ZeroMass for a zero field.
double fixed_point_residual(const DipoleProfile& profile);

/// Recomputes mass, energies and residual from the profile's field.
void refresh_diagnostics(DipoleProfile& profile);

}  // namespace sadovskii
