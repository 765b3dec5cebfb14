#pragma once

#include <iosfwd>
#include <string>

#include "sadovskii/contour.hpp"
#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Field CSV: a `# grid origin_x1=.. width=.. height=.. cell=.. nx=.. ny=..`
/// comment, an `i,j,value` header, then one row per nonzero cell.
void write_field_csv(const GridField& field, std::ostream& out);
void write_field_csv(const GridField& field, const std::string& path);
GridField read_field_csv(std::istream& in);
GridField read_field_csv(const std::string& path);

/// Contour CSV: optional `# touches_axis=1` comment, an `x1,x2` header, vertex rows.
void write_contour_csv(const ContourPolygon& contour, std::ostream& out);
void write_contour_csv(const ContourPolygon& contour, const std::string& path);
ContourPolygon read_contour_csv(std::istream& in);
ContourPolygon read_contour_csv(const std::string& path);

}  // namespace sadovskii
