#include "sadovskii/energy.hpp"

#include <cmath>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

void require_same_grid(const GridField& f, const GridField& g) {
  if (!(f.spec() == g.spec())) throw InvalidArgument("interaction_energy: grids differ");
}

void require_params(double p, double lambda) {
  if (!(p > 1.0)) throw InvalidArgument("penalized_energy: p must exceed 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("penalized_energy: lambda must be positive");
  }
}

}  // namespace

double pair_energy(const GridField& f, const CellSamples& psi) {
  const auto v = f.values();
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0.0) s += v[k] * psi.values[k];
  }
  return s * f.spec().cell_area();
}

double interaction_energy(const StreamOperator& op, const GridField& f, const GridField& g) {
  require_same_grid(f, g);
  if (!(op.spec() == f.spec())) throw InvalidArgument("interaction_energy: operator grid differs");
  if (f.is_zero() || g.is_zero()) return 0.0;
  return pair_energy(f, op.apply(g));
}

double interaction_energy(const GridField& f, const GridField& g) {
  require_same_grid(f, g);
  if (f.is_zero() || g.is_zero()) return 0.0;
  const StreamOperator op(f.spec());
  return interaction_energy(op, f, g);
}

double kinetic_energy(const StreamOperator& op, const GridField& f) {
  return 0.5 * interaction_energy(op, f, f);
}

double kinetic_energy(const GridField& f) { return 0.5 * interaction_energy(f, f); }

double lp_penalty(const GridField& f, double p, double lambda) {
  if (std::isinf(p)) return 0.0;
  require_params(p, lambda);
  double s = 0.0;
  for (double v : f.values()) {
    if (v > 0.0) s += std::pow(v / lambda, p);
  }
  return lambda / p * s * f.spec().cell_area();
}

EnergyReport penalized_energy(const StreamOperator& op, const GridField& f, double p,
                              double lambda) {
  if (!std::isinf(p)) require_params(p, lambda);
  EnergyReport r;
  r.kinetic = kinetic_energy(op, f);
  r.penalty = lp_penalty(f, p, lambda);
  r.penalized = r.kinetic - r.penalty;
  return r;
}

EnergyReport penalized_energy(const GridField& f, double p, double lambda) {
  if (!std::isinf(p)) require_params(p, lambda);
  EnergyReport r;
  r.kinetic = kinetic_energy(f);
  r.penalty = lp_penalty(f, p, lambda);
  r.penalized = r.kinetic - r.penalty;
  return r;
}

}  // namespace sadovskii
