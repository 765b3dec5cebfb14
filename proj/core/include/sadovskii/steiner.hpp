#pragma once

#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Row-wise symmetric decreasing rearrangement about x1 = 0.
///
/// Each row is sorted in decreasing order and laid out outward from the
/// center, alternating right and left. Row multisets are kept exactly, so
/// mass, impulse and every Lq norm are unchanged. Values are non-increasing
/// away from the axis on both sides; the row is exactly even whenever its
/// values pair up (indicators, already symmetric rows).
/// Requires a centered grid.
GridField steiner_symmetrize(const GridField& field);

/// Average of the field and its reflection x1 -> -x1 (exactly even output).
GridField mirror_average(const GridField& field);

/// True if every row is even in x1 and non-increasing for x1 >= 0, within tol.
bool is_steiner_symmetric(const GridField& field, double tol = 0.0);

}  // namespace sadovskii
