#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sadovskii/contour.hpp"
#include "sadovskii/particles.hpp"

namespace sadovskii {

struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double impulse = 0.0;
  double lp_norm = 0.0;
  double energy = 0.0;
  double center_x1 = 0.0;
  double shift_tau = 0.0;
  std::optional<double> perimeter;
  double support_diameter = 0.0;
};

struct DiagnosticsSeries {
  std::vector<DiagnosticsRecord> records;
  std::map<std::string, std::string> config;
};

struct RunOptions {
  double T = 1.0;
  double dt = 0.01;
  int record_every = 1;
  /// Exponent of the recorded Lp norm.
  double lp_exponent = 2.0;
  /// Upper bound on contour vertices; refinement stops beyond it.
  std::size_t max_contour_vertices = 200000;

  void validate() const;
};

/// One classical RK4 step. Circulations are unchanged; particles pushed below
/// the wall are reflected and counted in wall_reflections.
ParticleEnsemble step(const ParticleEnsemble& state, double dt);

/// Time-steps to T, recording diagnostics at t = 0, every record_every steps
/// and at T. With a contour, its vertices are co-advected and edges longer
/// than twice their initial length are split at the midpoint.
/// Throws CflViolation when max|u| dt reaches the blob radius.
DiagnosticsSeries run(const ParticleEnsemble& initial, const RunOptions& options,
                      std::optional<ContourPolygon> contour = std::nullopt,
                      ContourPolygon* final_contour = nullptr,
                      ParticleEnsemble* final_state = nullptr);

/// Time step satisfying the CFL rule with margin: 0.5 * blob_radius / max|u|.
double suggested_dt(const ParticleEnsemble& state);

/// Circulation-weighted mean of u1. Throws ZeroMass for zero total circulation.
double center_of_mass_rate(const ParticleEnsemble& state);

struct ShiftEstimate {
  std::vector<double> times;
  std::vector<double> tau;
  double fitted_speed = 0.0;
};

/// tau(t) = center_x1(t) - center_x1(0) and its least-squares slope.
/// Throws InsufficientData with fewer than 3 records.
ShiftEstimate estimate_shift(const DiagnosticsSeries& series);

/// Largest pairwise distance among the points (convex hull based).
double point_set_diameter(const std::vector<Point>& points);

DiagnosticsRecord diagnose(const ParticleEnsemble& state, double lp_exponent,
                           const ContourPolygon* contour, double center_x1_at_start);

void write_series_csv(const DiagnosticsSeries& series, std::ostream& out);
void write_series_csv(const DiagnosticsSeries& series, const std::string& path);

}  // namespace sadovskii
