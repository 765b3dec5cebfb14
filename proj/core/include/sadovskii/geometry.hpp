#pragma once

#include <cmath>

namespace sadovskii {

inline constexpr double kPi = 3.14159265358979323846;

/// Point of the closed upper half-plane (x2 >= 0 for evaluation points).
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Velocity {
  double u1 = 0.0;
  double u2 = 0.0;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x1 - b.x1, a.x2 - b.x2);
}

/// Reflection across the wall x2 = 0.
inline Point mirror(const Point& p) { return {p.x1, -p.x2}; }

}  // namespace sadovskii
