#pragma once

#include <vector>

#include "sadovskii/contour.hpp"
#include "sadovskii/geometry.hpp"
#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Vortex blobs in the upper half-plane; the wall is handled by negative images.
struct ParticleEnsemble {
  std::vector<Point> positions;
  std::vector<double> circulations;
  /// Lagrangian area carried by each particle (constant under the flow).
  std::vector<double> areas;
  double blob_radius = 0.0;
  double time = 0.0;
  /// Number of times a particle was reflected back across the wall.
  int wall_reflections = 0;

  [[nodiscard]] std::size_t size() const { return positions.size(); }
  [[nodiscard]] bool empty() const { return positions.empty(); }

  void validate() const;
};

/// Blob radius as a multiple of the mean particle spacing.
inline constexpr double kDefaultBlobFactor = 2.0;

/// One particle per occupied cell, or per b x b block of cells when
/// target_count is smaller than the number of occupied cells. Particles sit at
/// circulation-weighted centroids, so mass and impulse are preserved exactly.
/// Throws InvalidArgument for an empty source.
ParticleEnsemble discretize(const GridField& source, int target_count = 0,
                            double blob_factor = kDefaultBlobFactor);

/// Rasterizes the contour (strength times indicator) on a cell grid covering
/// it, then discretizes the result.
ParticleEnsemble discretize(const ContourPolygon& contour, double cell, double strength = 1.0,
                            int target_count = 0, double blob_factor = kDefaultBlobFactor);

double total_circulation(const ParticleEnsemble& state);
double particle_impulse(const ParticleEnsemble& state);
double particle_center_x1(const ParticleEnsemble& state);

/// (sum of (circulation/area)^p * area)^(1/p).
double particle_lp_norm(const ParticleEnsemble& state, double p);

/// Half of the double sum of circulations times the regularized Green's function.
double particle_energy(const ParticleEnsemble& state);

/// Induced velocity at an arbitrary point.
Velocity velocity_eval(const ParticleEnsemble& state, const Point& x);

/// Induced velocity at every particle.
std::vector<Velocity> particle_velocities(const ParticleEnsemble& state);

/// Induced velocity at a list of passive points.
std::vector<Velocity> velocities_at(const ParticleEnsemble& state, const std::vector<Point>& xs);

}  // namespace sadovskii
