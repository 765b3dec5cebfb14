#include "sadovskii/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "sadovskii/error.hpp"
#include "sadovskii/steiner.hpp"
#include "sadovskii/stream_operator.hpp"

namespace sadovskii {
namespace {

constexpr double kEnlarge = 1.5;
constexpr double kShrink = 0.7;
constexpr double kShrinkBelow = 0.4;
constexpr int kEdgeCells = 2;
constexpr int kMaxHalvings = 8;
constexpr double kSupportFloor = 1e-9;

enum class Status { ok, low_impulse, ring };

struct Attempt {
  Status status = Status::ok;
  Multipliers result;
};

struct Sample {
  GridField field;
  double impulse = 0.0;
  double mass = 0.0;
};

Sample sample(const CellSamples& psi, double W, double gamma, const SolveConfig& c) {
  Sample s;
  s.field = apply_vorticity_map(psi, W, gamma, c.p, c.lambda, c.mode);
  s.impulse = field_impulse(s.field);
  s.mass = field_mass(s.field);
  return s;
}

// Impulse is non-increasing in W; bisection on [0, W_max] where W_max kills
// every positive cell, then linear blending of the bracketing fields so the
// impulse matches mu to roundoff.
Attempt solve_w(const CellSamples& psi, double gamma, const SolveConfig& c) {
  Attempt a;
  const GridSpec& g = psi.spec;
  double w_max = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      w_max = std::max(w_max, (psi.at(i, j) - gamma) / g.center_x2(j));
    }
  }
  Sample lo = sample(psi, 0.0, gamma, c);
  if (!(lo.impulse >= c.mu) || w_max <= 0.0) {
    a.status = Status::low_impulse;
    return a;
  }
  double w_lo = 0.0;
  double w_hi = w_max;
  Sample hi;
  hi.field = GridField(g);
  for (int it = 0; it < 200; ++it) {
    const double w = 0.5 * (w_lo + w_hi);
    Sample mid = sample(psi, w, gamma, c);
    if (mid.impulse >= c.mu) {
      w_lo = w;
      lo = std::move(mid);
    } else {
      w_hi = w;
      hi = std::move(mid);
    }
    if (std::abs(lo.impulse - c.mu) <= 1e-13 * c.mu || w_hi - w_lo <= 1e-14 * w_max) break;
  }
  const double gap = lo.impulse - hi.impulse;
  const double t = gap > 0.0 ? std::clamp((lo.impulse - c.mu) / gap, 0.0, 1.0) : 0.0;
  a.result.W = (1.0 - t) * w_lo + t * w_hi;
  a.result.gamma = gamma;
  a.result.field = lo.field * (1.0 - t) + hi.field * t;
  if (!a.result.field.has_compact_support()) a.status = Status::ring;
  return a;
}

// Outer bisection on gamma when the mass cap binds at gamma = 0.
Attempt solve_pair(const CellSamples& psi, const SolveConfig& c) {
  Attempt a0 = solve_w(psi, 0.0, c);
  if (a0.status != Status::ok) return a0;
  const double cap = c.nu * (1.0 + 1e-12);
  if (field_mass(a0.result.field) <= cap) return a0;

  double g_lo = 0.0;
  double g_hi = *std::max_element(psi.values.begin(), psi.values.end());
  Attempt best;
  bool have_best = false;
  for (int it = 0; it < 200; ++it) {
    const double gamma = 0.5 * (g_lo + g_hi);
    Attempt a = solve_w(psi, gamma, c);
    if (a.status == Status::low_impulse) {
      g_hi = gamma;
      continue;
    }
    const double m = field_mass(a.result.field);
    if (a.status == Status::ring || m > c.nu) {
      g_lo = gamma;
    } else {
      g_hi = gamma;
      best = std::move(a);
      have_best = true;
      if (c.nu - m <= 1e-10 * c.nu) break;
    }
    if (g_hi - g_lo <= 1e-14 * std::max(g_hi, 1e-300)) break;
  }
  if (!have_best) {
    Attempt fail;
    fail.status = Status::low_impulse;
    return fail;
  }
  return best;
}

[[noreturn]] void throw_infeasible(Status s) {
  if (s == Status::ring) {
    throw InfeasibleImpulse("solve_multipliers: the field reaching impulse mu is not compactly "
                            "supported in the grid");
  }
  throw InfeasibleImpulse("solve_multipliers: impulse mu is not reached even at W = 0");
}

GridSpec scaled(const GridSpec& g, double factor) {
  return GridSpec::centered(g.nx, g.ny, g.cell * factor);
}

GridField normalized_impulse(GridField f, double mu) {
  const double I = field_impulse(f);
  if (I > 0.0) f *= mu / I;
  return f;
}

GridField symmetrized(const GridField& f) { return mirror_average(steiner_symmetrize(f)); }

// Truncated Gaussian with center height s and width s/2, impulse mu.
GridField gaussian_bump(const GridSpec& g, double s, double mu) {
  const double sigma = 0.5 * s;
  GridField f(g);
  auto v = f.values_mut();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double dx = g.center_x1(i);
      const double dy = g.center_x2(j) - s;
      const double r2 = (dx * dx + dy * dy) / (sigma * sigma);
      if (r2 < 9.0) v[g.index(i, j)] = std::exp(-0.5 * r2);
    }
  }
  return normalized_impulse(std::move(f), mu);
}

GridSpec grid_for_scale(const GridSpec& g, double s) {
  return GridSpec::centered(g.nx, g.ny, 3.0 * s / g.ny);
}

// Height scale of the starting bump. Patch mode uses (mu/lambda)^(1/3).
// Regular mode balances amplitudes: lambda * max(psi)^e = 2^e * max(w) with
// e = 1/(p-1). On grids scaled with s the left side over the right side
// grows like s^(3-e), so one trial evaluation fixes s.
double starting_scale(const SolveConfig& c) {
  const double s0 = std::cbrt(c.mu / c.lambda);
  if (c.mode == Mode::patch) return s0;
  const double e = 1.0 / (c.p - 1.0);
  const GridSpec g = grid_for_scale(c.grid, s0);
  const GridField f = gaussian_bump(g, s0, c.mu);
  const CellSamples psi = StreamOperator(g).apply(f);
  const double psi_max = *std::max_element(psi.values.begin(), psi.values.end());
  const double w_max = *std::max_element(f.values().begin(), f.values().end());
  const double q = c.lambda * std::pow(psi_max, e) / w_max;
  return s0 * std::pow(std::pow(2.0, e) / q, 1.0 / (3.0 - e));
}

// Support within kEdgeCells of the left, right or top edge.
bool near_edge(const SupportBox& b, const GridSpec& g) {
  return b.i_min < kEdgeCells || b.i_max >= g.nx - kEdgeCells || b.j_max >= g.ny - kEdgeCells;
}

bool too_small(const SupportBox& b, const GridSpec& g) {
  const double fx = static_cast<double>(b.i_max - b.i_min + 1) / g.nx;
  const double fy = static_cast<double>(b.j_max + 1) / g.ny;
  return std::max(fx, fy) < kShrinkBelow;
}

double effective_p(Mode mode, double p) {
  return mode == Mode::patch ? std::numeric_limits<double>::infinity() : p;
}

}  // namespace

void SolveConfig::validate() const {
  if (mode == Mode::regular && !(p > 4.0 / 3.0)) {
    throw InvalidArgument("p must exceed 4/3 in regular mode");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidArgument("nu must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (max_iter <= 0) throw InvalidArgument("max_iter must be positive");
  if (!(tol_field > 0.0)) throw InvalidArgument("tol_field must be positive");
  if (!(tol_multiplier > 0.0)) throw InvalidArgument("tol_multiplier must be positive");
  if (!(relaxation > 0.0 && relaxation <= 1.0)) {
    throw InvalidArgument("relaxation must lie in (0, 1]");
  }
  if (max_regrids < 0) throw InvalidArgument("max_regrids must be nonnegative");
  grid.validate();
  if (!grid.is_centered()) throw InvalidArgument("grid must be centered with even nx");
}

Multipliers solve_multipliers(const CellSamples& psi, const SolveConfig& config) {
  config.validate();
  if (!(psi.spec == config.grid)) throw InvalidArgument("solve_multipliers: grid mismatch");
  Attempt a = solve_pair(psi, config);
  if (a.status != Status::ok) throw_infeasible(a.status);
  return std::move(a.result);
}

double effective_p(const DipoleProfile& profile) { return effective_p(profile.mode, profile.p); }

double fixed_point_residual(const DipoleProfile& profile) {
  const double m = field_mass(profile.field);
  if (!(m > 0.0)) throw ZeroMass("fixed_point_residual: zero-mass profile");
  const StreamOperator op(profile.field.spec());
  const CellSamples psi = op.apply(profile.field);
  const GridField mapped =
      apply_vorticity_map(psi, profile.W, profile.gamma, profile.p, profile.lambda, profile.mode);
  return l1_distance(profile.field, mapped) / m;
}

void refresh_diagnostics(DipoleProfile& profile) {
  const StreamOperator op(profile.field.spec());
  profile.mu = field_impulse(profile.field);
  profile.mass = field_mass(profile.field);
  profile.energy = penalized_energy(op, profile.field, effective_p(profile), profile.lambda);
  profile.residual = profile.mass > 0.0 ? fixed_point_residual(profile) : 0.0;
}

DipoleProfile solve_dipole(const SolveConfig& config) {
  config.validate();
  SolveConfig c = config;
  const double pe = effective_p(c.mode, c.p);

  GridField omega;
  if (c.initial) {
    omega = c.initial->spec() == c.grid ? *c.initial : resample(*c.initial, c.grid);
  } else {
    const double s = starting_scale(c);
    if (c.adaptive_domain) c.grid = grid_for_scale(c.grid, s);
    omega = gaussian_bump(c.grid, s, c.mu);
  }
  if (omega.is_zero()) throw InvalidArgument("initial field vanishes on the grid");
  omega = normalized_impulse(symmetrized(omega), c.mu);

  auto op = std::make_unique<StreamOperator>(c.grid);
  auto regrid = [&](double factor) {
    c.grid = scaled(c.grid, factor);
    omega = normalized_impulse(symmetrized(resample(omega, c.grid)), c.mu);
    op = std::make_unique<StreamOperator>(c.grid);
  };

  DipoleProfile prof;
  prof.mode = c.mode;
  prof.p = c.p;
  prof.lambda = c.lambda;
  prof.nu = c.nu;
  prof.near_degenerate = c.mode == Mode::regular && c.p < 4.0 / 3.0 + 0.05;

  double r = c.relaxation;
  double e_old = -std::numeric_limits<double>::infinity();
  double w_prev = std::numeric_limits<double>::quiet_NaN();
  double g_prev = std::numeric_limits<double>::quiet_NaN();
  int regrids = 0;
  int it = 0;
  while (it < c.max_iter) {
    ++it;
    const CellSamples psi = op->apply(omega);
    Attempt a = solve_pair(psi, c);
    if (a.status != Status::ok) {
      if (c.adaptive_domain && regrids < c.max_regrids) {
        regrid(kEnlarge);
        ++regrids;
        e_old = -std::numeric_limits<double>::infinity();
        continue;
      }
      throw_infeasible(a.status);
    }

    // A start outside the mass cap jumps straight to the feasible map output.
    const bool feasible = field_mass(omega) <= c.nu * (1.0 + 1e-9);
    if (!feasible) e_old = -std::numeric_limits<double>::infinity();
    GridField next;
    EnergyReport e_next;
    double rs_used = 1.0;
    for (int h = 0;; ++h) {
      const double rs = feasible ? r : 1.0;
      rs_used = rs;
      next = symmetrized(omega * (1.0 - rs) + a.result.field * rs);
      e_next = penalized_energy(*op, next, pe, c.lambda);
      const bool descent = e_next.penalized < e_old - 1e-10 * std::abs(e_old);
      if (!descent) {
        if (h == 0) r = std::min(c.relaxation, 2.0 * r);
        break;
      }
      if (h == kMaxHalvings) break;
      r *= 0.5;
    }

    // Stationarity of the symmetrized step; the raw map residual can stall at
    // the discretization level because the discrete stream function is not
    // exactly Steiner monotone at the support edge.
    const double change = l1_distance(next, omega) / (rs_used * std::max(field_mass(omega), 1e-300));
    const double W = a.result.W;
    const double gamma = a.result.gamma;
    const double w_scale = std::max(std::abs(W), 1e-300);
    const double g_scale = std::max(gamma, W * c.grid.height());
    const bool multipliers_settled = std::abs(W - w_prev) <= c.tol_multiplier * w_scale &&
                                     std::abs(gamma - g_prev) <= c.tol_multiplier * g_scale;
    omega = std::move(next);
    e_old = e_next.penalized;
    w_prev = W;
    g_prev = gamma;
    prof.W = W;
    prof.gamma = gamma;

    if (c.adaptive_domain && regrids < c.max_regrids) {
      double peak = 0.0;
      for (double v : omega.values()) peak = std::max(peak, v);
      // Relaxation leaves geometrically decaying remnants of earlier iterates.
      const SupportBox box = support_box(omega, kSupportFloor * peak);
      if (near_edge(box, c.grid)) {
        regrid(kEnlarge);
        ++regrids;
        e_old = -std::numeric_limits<double>::infinity();
        continue;
      }
      if (too_small(box, c.grid)) {
        regrid(kShrink);
        ++regrids;
        e_old = -std::numeric_limits<double>::infinity();
        continue;
      }
    }
    if (change < c.tol_field && multipliers_settled) {
      prof.converged = true;
      break;
    }
  }

  prof.field = std::move(omega);
  prof.iterations = it;
  refresh_diagnostics(prof);
  return prof;
}

}  // namespace sadovskii
