#pragma once

#include <functional>

#include "sadovskii/contour.hpp"

namespace sadovskii {

struct TailParams {
  double epsilon = 0.01;
  /// Target maximal half-width L of the output contour.
  double tail_length = 1.0;
  /// Height a of the spike.
  double spike_center = 0.1;
  /// Spike window half-width delta; also the width of the end mollification.
  double spike_halfwidth = 0.005;
  /// Upper end of the width plateau; 0 selects 1.1 times the base top.
  double support_height = 0.0;
  /// Width of the smoothing kernel applied to the base curve; 0 selects
  /// min(epsilon, delta) / 4.
  double smoothing_width = 0.0;

  /// Checks the parameter ranges that do not depend on the base contour.
  void validate() const;
};

/// Involutive decreasing transition with H(0) = 1, H(1) = 0, all
/// derivatives vanishing at 0: exp(1 - 1/x) + exp(1 - 1/H(x)) = 1.
double transition_H(double x);

/// Unit-height smooth bump supported on (-1, 1).
double unit_bump(double s);

/// Integral of unit_bump over (-1, 1).
double unit_bump_integral();

struct TailConstruction {
  ContourPolygon contour;
  /// Spike amplitude parameter solving max(l_eps (K + 1)) = L - epsilon.
  double amplitude = 0.0;
  /// Height where the half-width equals L.
  double apex_height = 0.0;
  double base_top = 0.0;
  double support_height = 0.0;
  /// L1 norm of the spike function K.
  double spike_l1 = 0.0;
  /// Integral of |zeta - l| over heights.
  double width_l1 = 0.0;
  /// Output half-width zeta(x2).
  std::function<double(double)> width;
};

/// Smooth symmetric contour with a thin spike of half-width L at height about
/// spike_center, built from the base boundary curve l(x2) = half_width_at.
/// Throws InvalidArgument when the delta constraint or the width target fails.
TailConstruction build_tailed_contour(const ContourPolygon& base, const TailParams& params);

ContourPolygon make_tailed_contour(const ContourPolygon& base, const TailParams& params);

}  // namespace sadovskii
