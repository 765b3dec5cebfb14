#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sadovskii/geometry.hpp"

namespace sadovskii {

/// Uniform cell layout over [origin_x1, origin_x1 + nx*cell] x [0, ny*cell].
/// The bottom edge always lies on the wall x2 = 0.
struct GridSpec {
  double origin_x1 = 0.0;
  double cell = 1.0;
  int nx = 0;
  int ny = 0;

  /// Grid symmetric about x1 = 0 (requires even nx for Steiner symmetrization).
  static GridSpec centered(int nx, int ny, double cell);

  /// Centered grid covering [-width/2, width/2] x [0, height]; cell from height.
  static GridSpec centered_extent(int nx, int ny, double height);

  [[nodiscard]] double width() const { return nx * cell; }
  [[nodiscard]] double height() const { return ny * cell; }
  [[nodiscard]] double center_x1(int i) const { return origin_x1 + (i + 0.5) * cell; }
  [[nodiscard]] double center_x2(int j) const { return (j + 0.5) * cell; }
  [[nodiscard]] Point center(int i, int j) const { return {center_x1(i), center_x2(j)}; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  [[nodiscard]] double cell_area() const { return cell * cell; }
  [[nodiscard]] bool is_centered() const;
  [[nodiscard]] bool contains(const Point& p) const;

  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Real samples at cell centers without a sign constraint (stream values,
/// residual maps).
struct CellSamples {
  GridSpec spec;
  std::vector<double> values;

  [[nodiscard]] double at(int i, int j) const { return values[spec.index(i, j)]; }
};

/// Nonnegative cell-averaged vorticity on a half-plane grid.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridSpec& spec);
  GridField(const GridSpec& spec, std::vector<double> values);

  [[nodiscard]] const GridSpec& spec() const { return spec_; }
  [[nodiscard]] double at(int i, int j) const { return values_[spec_.index(i, j)]; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Mutable view; callers keep the values nonnegative.
  [[nodiscard]] std::span<double> values_mut() { return values_; }

  void set(int i, int j, double v);

  [[nodiscard]] bool is_zero() const;

  /// True when no mass sits on the left, right or top ring of cells.
  [[nodiscard]] bool has_compact_support() const;

  GridField& operator+=(const GridField& other);
  GridField& operator*=(double c);

  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator*(GridField a, double c) { return a *= c; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

struct GridNorms {
  double mass = 0.0;
  double impulse = 0.0;
  double lp_norm = 0.0;
};

GridNorms grid_norms(const GridField& field, double p);

double field_mass(const GridField& field);
double field_impulse(const GridField& field);

/// Horizontal center of mass; zero for a zero field.
double center_of_mass_x1(const GridField& field);

/// Sum of |f - g| times cell area. Grids must match.
double l1_distance(const GridField& f, const GridField& g);

/// Bounding box of the cells carrying positive values, in cell indices.
struct SupportBox {
  int i_min = 0;
  int i_max = -1;
  int j_min = 0;
  int j_max = -1;
  [[nodiscard]] bool empty() const { return i_max < i_min; }
};

SupportBox support_box(const GridField& field, double threshold = 0.0);

/// Bilinear re-interpolation of cell-center values onto another grid
/// (zero outside the source rectangle, odd reflection across the wall).
GridField resample(const GridField& field, const GridSpec& target);

/// Shifts values by whole cells along x1, filling vacated cells with zero.
GridField shift_cells_x1(const GridField& field, int cells);

}  // namespace sadovskii
