#include "sadovskii/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

// Sums a row in sorted order, so the result depends only on the row's
// multiset of values. `row` is left holding the sorted values.
double sorted_row_sum(const GridField& field, int j, std::vector<double>& row) {
  const int nx = field.spec().nx;
  row.resize(nx);
  for (int i = 0; i < nx; ++i) row[i] = field.at(i, j);
  std::sort(row.begin(), row.end());
  double s = 0.0;
  for (double v : row) s += v;
  return s;
}

}  // namespace

GridSpec GridSpec::centered(int nx, int ny, double cell) {
  GridSpec g{-0.5 * nx * cell, cell, nx, ny};
  g.validate();
  return g;
}

GridSpec GridSpec::centered_extent(int nx, int ny, double height) {
  if (ny <= 0 || !(height > 0.0)) {
    throw InvalidArgument("GridSpec: height and ny must be positive");
  }
  return centered(nx, ny, height / ny);
}

bool GridSpec::is_centered() const {
  return nx % 2 == 0 && std::abs(origin_x1 + 0.5 * nx * cell) <= 1e-12 * std::max(1.0, width());
}

bool GridSpec::contains(const Point& p) const {
  return p.x1 >= origin_x1 && p.x1 <= origin_x1 + width() && p.x2 >= 0.0 && p.x2 <= height();
}

void GridSpec::validate() const {
  if (nx <= 0 || ny <= 0) throw InvalidArgument("GridSpec: nx and ny must be positive");
  if (!(cell > 0.0) || !std::isfinite(cell)) {
    throw InvalidArgument("GridSpec: cell size must be positive and finite");
  }
  if (!std::isfinite(origin_x1)) throw InvalidArgument("GridSpec: origin must be finite");
}

GridField::GridField(const GridSpec& spec) : spec_(spec), values_(spec.size(), 0.0) {
  spec_.validate();
}

GridField::GridField(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != spec_.size()) {
    throw InvalidArgument("GridField: value count does not match the grid");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("GridField: values must be finite and nonnegative");
    }
  }
}

void GridField::set(int i, int j, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidArgument("GridField::set: values must be finite and nonnegative");
  }
  values_[spec_.index(i, j)] = v;
}

bool GridField::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool GridField::has_compact_support() const {
  for (int j = 0; j < spec_.ny; ++j) {
    if (at(0, j) != 0.0 || at(spec_.nx - 1, j) != 0.0) return false;
  }
  for (int i = 0; i < spec_.nx; ++i) {
    if (at(i, spec_.ny - 1) != 0.0) return false;
  }
  return true;
}

GridField& GridField::operator+=(const GridField& other) {
  if (!(spec_ == other.spec_)) throw InvalidArgument("GridField: grid mismatch in sum");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

GridField& GridField::operator*=(double c) {
  if (!(c >= 0.0)) throw InvalidArgument("GridField: scaling factor must be nonnegative");
  for (double& v : values_) v *= c;
  return *this;
}

GridNorms grid_norms(const GridField& field, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("grid_norms: p must be >= 1");
  const GridSpec& g = field.spec();
  double mass = 0.0, impulse = 0.0, lp = 0.0;
  std::vector<double> row;
  for (int j = 0; j < g.ny; ++j) {
    const double m = sorted_row_sum(field, j, row);
    mass += m;
    impulse += m * g.center_x2(j);
    for (double& v : row) v = v == 0.0 ? 0.0 : std::pow(v, p);
    for (double v : row) lp += v;
  }
  const double a = g.cell_area();
  return {mass * a, impulse * a, std::pow(lp * a, 1.0 / p)};
}

double field_mass(const GridField& field) {
  std::vector<double> row;
  double s = 0.0;
  for (int j = 0; j < field.spec().ny; ++j) s += sorted_row_sum(field, j, row);
  return s * field.spec().cell_area();
}

double field_impulse(const GridField& field) {
  const GridSpec& g = field.spec();
  std::vector<double> row;
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j) s += sorted_row_sum(field, j, row) * g.center_x2(j);
  return s * g.cell_area();
}

double center_of_mass_x1(const GridField& field) {
  const GridSpec& g = field.spec();
  double m = 0.0, mx = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double v = field.at(i, j);
      m += v;
      mx += v * g.center_x1(i);
    }
  }
  return m > 0.0 ? mx / m : 0.0;
}

double l1_distance(const GridField& f, const GridField& g) {
  if (!(f.spec() == g.spec())) throw InvalidArgument("l1_distance: grid mismatch");
  double s = 0.0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s * f.spec().cell_area();
}

SupportBox support_box(const GridField& field, double threshold) {
  const GridSpec& g = field.spec();
  SupportBox box{g.nx, -1, g.ny, -1};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (field.at(i, j) > threshold) {
        box.i_min = std::min(box.i_min, i);
        box.i_max = std::max(box.i_max, i);
        box.j_min = std::min(box.j_min, j);
        box.j_max = std::max(box.j_max, j);
      }
    }
  }
  if (box.i_max < 0) return SupportBox{};
  return box;
}

GridField resample(const GridField& field, const GridSpec& target) {
  const GridSpec& s = field.spec();
  target.validate();
  // Sample with odd reflection below the wall so interpolated values vanish at x2 = 0.
  auto sample = [&](int i, int j) -> double {
    if (i < 0 || i >= s.nx || j >= s.ny) return 0.0;
    if (j < 0) return -field.at(i, -j - 1);
    return field.at(i, j);
  };
  GridField out(target);
  auto vals = out.values_mut();
  for (int j = 0; j < target.ny; ++j) {
    const double fy = target.center_x2(j) / s.cell - 0.5;
    const int j0 = static_cast<int>(std::floor(fy));
    const double ty = fy - j0;
    for (int i = 0; i < target.nx; ++i) {
      const double fx = (target.center_x1(i) - s.origin_x1) / s.cell - 0.5;
      const int i0 = static_cast<int>(std::floor(fx));
      const double tx = fx - i0;
      const double v = (1 - tx) * (1 - ty) * sample(i0, j0) + tx * (1 - ty) * sample(i0 + 1, j0) +
                       (1 - tx) * ty * sample(i0, j0 + 1) + tx * ty * sample(i0 + 1, j0 + 1);
      vals[target.index(i, j)] = std::max(v, 0.0);
    }
  }
  return out;
}

GridField shift_cells_x1(const GridField& field, int cells) {
  const GridSpec& g = field.spec();
  GridField out(g);
  auto vals = out.values_mut();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int src = i - cells;
      if (src >= 0 && src < g.nx) vals[g.index(i, j)] = field.at(src, j);
    }
  }
  return out;
}

}  // namespace sadovskii
