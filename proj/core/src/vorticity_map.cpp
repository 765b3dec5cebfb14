#include <algorithm>
#include <cmath>
#include <vector>

#include "sadovskii/error.hpp"
#include "sadovskii/solver.hpp"

namespace sadovskii {
namespace {

// phi = psi - W x2 - gamma with clamped columns/top row and an odd reflection
// of psi across the wall for the ghost row j = -1.
class Argument {
 public:
  Argument(const CellSamples& psi, double W, double gamma) : psi_(psi), W_(W), gamma_(gamma) {}

  [[nodiscard]] double at(int i, int j) const {
    const GridSpec& g = psi_.spec;
    i = std::clamp(i, 0, g.nx - 1);
    if (j < 0) return -psi_.at(i, 0) + W_ * 0.5 * g.cell - gamma_;
    j = std::min(j, g.ny - 1);
    return psi_.at(i, j) - W_ * g.center_x2(j) - gamma_;
  }

  // Bilinear interpolant in center-index coordinates.
  [[nodiscard]] double interpolate(double X, double Y) const {
    const int i0 = static_cast<int>(std::floor(X));
    const int j0 = static_cast<int>(std::floor(Y));
    const double tx = X - i0;
    const double ty = Y - j0;
    // On the wall the odd part cancels exactly.
    if (j0 == -1 && ty == 0.5) return -gamma_;
    return (1.0 - tx) * (1.0 - ty) * at(i0, j0) + tx * (1.0 - ty) * at(i0 + 1, j0) +
           (1.0 - tx) * ty * at(i0, j0 + 1) + tx * ty * at(i0 + 1, j0 + 1);
  }

 private:
  const CellSamples& psi_;
  double W_;
  double gamma_;
};

double cell_fraction(const Argument& phi, int i, int j, int s, std::vector<double>& nodes) {
  double lo = phi.at(i, j);
  double hi = lo;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const double v = phi.at(i + di, j + dj);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo > 0.0) return 1.0;
  if (hi <= 0.0) return 0.0;

  const int n = s + 1;
  nodes.resize(static_cast<std::size_t>(n) * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      nodes[b * n + a] = phi.interpolate(i - 0.5 + static_cast<double>(a) / s,
                                         j - 0.5 + static_cast<double>(b) / s);
    }
  }
  double sum = 0.0;
  for (int b = 0; b < s; ++b) {
    for (int a = 0; a < s; ++a) {
      const double v00 = nodes[b * n + a];
      const double v10 = nodes[b * n + a + 1];
      const double v01 = nodes[(b + 1) * n + a];
      const double v11 = nodes[(b + 1) * n + a + 1];
      sum += triangle_positive_fraction(v00, v10, v01) + triangle_positive_fraction(v11, v01, v10);
    }
  }
  return sum / (2.0 * s * s);
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::patch ? "patch" : "regular"; }

Mode parse_mode(const std::string& text) {
  if (text == "regular") return Mode::regular;
  if (text == "patch") return Mode::patch;
  throw InvalidArgument("mode must be 'regular' or 'patch', got '" + text + "'");
}

double triangle_positive_fraction(double a, double b, double c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  if (c <= 0.0) return 0.0;
  if (a >= 0.0) return 1.0;
  if (b >= 0.0) return 1.0 - a * a / ((a - b) * (a - c));
  return c * c / ((c - a) * (c - b));
}

GridField apply_vorticity_map(const CellSamples& psi, double W, double gamma, double p,
                              double lambda, Mode mode, int subcells) {
  const GridSpec& g = psi.spec;
  if (psi.values.size() != g.size()) throw InvalidArgument("apply_vorticity_map: size mismatch");
  if (!(lambda > 0.0)) throw InvalidArgument("apply_vorticity_map: lambda must be positive");
  GridField out(g);
  auto dst = out.values_mut();
  const Argument phi(psi, W, gamma);

  if (mode == Mode::patch) {
    if (subcells <= 0) throw InvalidArgument("apply_vorticity_map: subcells must be positive");
    std::vector<double> nodes;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        dst[g.index(i, j)] = lambda * cell_fraction(phi, i, j, subcells, nodes);
      }
    }
    return out;
  }

  if (!(p > 1.0)) throw InvalidArgument("apply_vorticity_map: p must exceed 1");
  const double e = 1.0 / (p - 1.0);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double v = phi.at(i, j);
      if (v > 0.0) dst[g.index(i, j)] = lambda * (e == 1.0 ? v : std::pow(v, e));
    }
  }
  return out;
}

}  // namespace sadovskii
