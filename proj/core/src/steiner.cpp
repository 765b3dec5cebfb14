#include "sadovskii/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

void require_centered(const GridSpec& g, const char* who) {
  if (!g.is_centered()) {
    throw InvalidArgument(std::string(who) + ": grid must be centered on x1 = 0 with even nx");
  }
}

}  // namespace

GridField steiner_symmetrize(const GridField& field) {
  const GridSpec& g = field.spec();
  require_centered(g, "steiner_symmetrize");
  GridField out(g);
  auto dst = out.values_mut();
  const int half = g.nx / 2;
  std::vector<double> row(g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) row[i] = field.at(i, j);
    std::sort(row.begin(), row.end(), std::greater<>());
    for (int k = 0; k < g.nx; ++k) {
      const int i = (k % 2 == 0) ? half + k / 2 : half - 1 - k / 2;
      dst[g.index(i, j)] = row[k];
    }
  }
  return out;
}

GridField mirror_average(const GridField& field) {
  const GridSpec& g = field.spec();
  require_centered(g, "mirror_average");
  GridField out(g);
  auto dst = out.values_mut();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      dst[g.index(i, j)] = 0.5 * (field.at(i, j) + field.at(g.nx - 1 - i, j));
    }
  }
  return out;
}

bool is_steiner_symmetric(const GridField& field, double tol) {
  const GridSpec& g = field.spec();
  if (!g.is_centered()) return false;
  const int half = g.nx / 2;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < half; ++i) {
      if (std::abs(field.at(i, j) - field.at(g.nx - 1 - i, j)) > tol) return false;
    }
    for (int i = half; i + 1 < g.nx; ++i) {
      if (field.at(i + 1, j) > field.at(i, j) + tol) return false;
    }
  }
  return true;
}

}  // namespace sadovskii
