#pragma once

#include <vector>

#include "sadovskii/geometry.hpp"
#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Closed polygon in the upper half-plane, counterclockwise, last vertex
/// connected back to the first. Vertices lie strictly above the wall unless
/// `touches_axis` is set, in which case x2 = 0 is allowed.
struct ContourPolygon {
  std::vector<Point> vertices;
  bool touches_axis = false;

  [[nodiscard]] std::size_t size() const { return vertices.size(); }
  [[nodiscard]] bool empty() const { return vertices.empty(); }

  /// Throws DegenerateGeometry/OutOfBounds when the invariants fail.
  void validate() const;
};

/// Signed area (positive for counterclockwise polygons).
double shoelace_area(const ContourPolygon& contour);

double contour_perimeter(const ContourPolygon& contour);

/// O(n^2) edge-pair test; adjacent edges and zero-length edges are skipped.
bool is_simple(const ContourPolygon& contour);

/// Largest |x1| over the vertices.
double max_abs_x1(const ContourPolygon& contour);

/// Cell area fractions of the polygon interior (even-odd rule) on `tmpl`'s grid.
/// Each cell is cut into `subrows` horizontal strips; coverage along a strip
/// is exact.
GridField rasterize(const ContourPolygon& contour, const GridSpec& tmpl, int subrows = 16);

/// Half of the interior length of the horizontal line at height y; for a
/// Steiner-symmetric domain this is the boundary curve l(y).
double half_width_at(const ContourPolygon& contour, double y);

/// Boundary of a Steiner-symmetric patch field, rebuilt from row masses:
/// row j contributes half-width (row mass / lambda) / 2 at the row center.
ContourPolygon patch_contour(const GridField& field, double lambda);

}  // namespace sadovskii
