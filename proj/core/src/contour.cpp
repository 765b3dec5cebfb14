#include "sadovskii/contour.hpp"

#include <algorithm>
#include <cmath>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x1, b.x1) <= p.x1 && p.x1 <= std::max(a.x1, b.x1) &&
         std::min(a.x2, b.x2) <= p.x2 && p.x2 <= std::max(a.x2, b.x2);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

// Sorted x-crossings of the polygon boundary with the line x2 = y.
std::vector<double> crossings(const ContourPolygon& contour, double y) {
  std::vector<double> xs;
  const auto& v = contour.vertices;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % n];
    if ((a.x2 <= y && y < b.x2) || (b.x2 <= y && y < a.x2)) {
      xs.push_back(a.x1 + (y - a.x2) * (b.x1 - a.x1) / (b.x2 - a.x2));
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

void ContourPolygon::validate() const {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
      throw DegenerateGeometry("ContourPolygon: non-finite vertex");
    }
    if (p.x2 < 0.0 || (!touches_axis && p.x2 == 0.0)) {
      throw OutOfBounds("ContourPolygon: vertex below the wall");
    }
  }
}

double shoelace_area(const ContourPolygon& contour) {
  const auto& v = contour.vertices;
  const std::size_t n = v.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % n];
    s += a.x1 * b.x2 - b.x1 * a.x2;
  }
  return 0.5 * s;
}

double contour_perimeter(const ContourPolygon& contour) {
  const auto& v = contour.vertices;
  if (v.size() < 3) {
    throw DegenerateGeometry("contour_perimeter: a polygon needs at least 3 vertices");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += distance(v[k], v[(k + 1) % v.size()]);
  return s;
}

bool is_simple(const ContourPolygon& contour) {
  std::vector<Point> v;
  v.reserve(contour.size());
  for (const Point& p : contour.vertices) {
    if (v.empty() || !(v.back() == p)) v.push_back(p);
  }
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t a = 0; a < n; ++a) {
    const Point& p1 = v[a];
    const Point& p2 = v[(a + 1) % n];
    for (std::size_t b = a + 1; b < n; ++b) {
      if (b == a + 1 || (a == 0 && b == n - 1)) continue;
      if (segments_intersect(p1, p2, v[b], v[(b + 1) % n])) return false;
    }
  }
  return true;
}

double max_abs_x1(const ContourPolygon& contour) {
  double m = 0.0;
  for (const Point& p : contour.vertices) m = std::max(m, std::abs(p.x1));
  return m;
}

GridField rasterize(const ContourPolygon& contour, const GridSpec& tmpl, int subrows) {
  if (subrows <= 0) throw InvalidArgument("rasterize: subrows must be positive");
  GridField out(tmpl);
  if (contour.empty()) return out;
  contour.validate();
  for (const Point& p : contour.vertices) {
    if (!tmpl.contains(p)) throw OutOfBounds("rasterize: contour leaves the grid rectangle");
  }
  auto vals = out.values_mut();
  const double h = tmpl.cell;
  const double weight = 1.0 / (subrows * h);
  for (int j = 0; j < tmpl.ny; ++j) {
    for (int k = 0; k < subrows; ++k) {
      const double y = (j + (k + 0.5) / subrows) * h;
      const std::vector<double> xs = crossings(contour, y);
      for (std::size_t m = 0; m + 1 < xs.size(); m += 2) {
        const double xl = xs[m] - tmpl.origin_x1;
        const double xr = xs[m + 1] - tmpl.origin_x1;
        const int il = std::max(0, static_cast<int>(std::floor(xl / h)));
        const int ir = std::min(tmpl.nx - 1, static_cast<int>(std::floor(xr / h)));
        for (int i = il; i <= ir; ++i) {
          const double lo = std::max(xl, i * h);
          const double hi = std::min(xr, (i + 1) * h);
          if (hi > lo) vals[tmpl.index(i, j)] += (hi - lo) * weight;
        }
      }
    }
  }
  for (double& v : vals) v = std::clamp(v, 0.0, 1.0);
  return out;
}

double half_width_at(const ContourPolygon& contour, double y) {
  const std::vector<double> xs = crossings(contour, y);
  double len = 0.0;
  for (std::size_t m = 0; m + 1 < xs.size(); m += 2) len += xs[m + 1] - xs[m];
  return 0.5 * len;
}

ContourPolygon patch_contour(const GridField& field, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("patch_contour: lambda must be positive");
  const GridSpec& g = field.spec();
  std::vector<double> half(g.ny, 0.0);
  int j_lo = g.ny, j_hi = -1;
  for (int j = 0; j < g.ny; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) row += field.at(i, j);
    half[j] = 0.5 * row * g.cell / lambda;
    // Widths far below a cell are solver remnants, not geometry.
    if (half[j] <= 1e-9 * g.cell) {
      half[j] = 0.0;
    } else {
      j_lo = std::min(j_lo, j);
      j_hi = std::max(j_hi, j);
    }
  }
  ContourPolygon c;
  if (j_hi < 0) return c;
  c.touches_axis = j_lo == 0;
  const double y_bottom = j_lo * g.cell;
  const double y_top = (j_hi + 1) * g.cell;

  if (c.touches_axis) {
    c.vertices.push_back({-half[0], 0.0});
    c.vertices.push_back({half[0], 0.0});
  } else {
    c.vertices.push_back({0.0, y_bottom});
  }
  for (int j = j_lo; j <= j_hi; ++j) c.vertices.push_back({half[j], g.center_x2(j)});
  c.vertices.push_back({0.0, y_top});
  for (int j = j_hi; j >= j_lo; --j) c.vertices.push_back({-half[j], g.center_x2(j)});
  return c;
}

}  // namespace sadovskii
