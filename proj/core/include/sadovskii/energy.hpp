#pragma once

#include "sadovskii/grid_field.hpp"
#include "sadovskii/stream_operator.hpp"

namespace sadovskii {

struct EnergyReport {
  double kinetic = 0.0;
  double penalty = 0.0;
  double penalized = 0.0;
};

/// Double integral of G(x, y) f(x) g(y) with the cell-integrated kernel.
double interaction_energy(const GridField& f, const GridField& g);
double interaction_energy(const StreamOperator& op, const GridField& f, const GridField& g);

/// Half of interaction_energy(f, f).
double kinetic_energy(const GridField& f);
double kinetic_energy(const StreamOperator& op, const GridField& f);

/// Sum of f * psi * cell_area for precomputed stream samples psi of the other field.
double pair_energy(const GridField& f, const CellSamples& psi);

/// Penalty (lambda/p) * integral of (f/lambda)^p; zero for p = infinity.
double lp_penalty(const GridField& f, double p, double lambda);

/// Kinetic energy minus lp_penalty. Requires p > 1 and lambda > 0.
EnergyReport penalized_energy(const GridField& f, double p, double lambda);
EnergyReport penalized_energy(const StreamOperator& op, const GridField& f, double p, double lambda);

}  // namespace sadovskii
