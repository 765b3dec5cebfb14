// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sadovskii/contour.hpp"
#include "sadovskii/energy.hpp"
#include "sadovskii/evolution.hpp"
#include "sadovskii/identities.hpp"
#include "sadovskii/kernel.hpp"
#include "sadovskii/lamb.hpp"
#include "sadovskii/particles.hpp"
#include "sadovskii/solver.hpp"
#include "sadovskii/steiner.hpp"
#include "sadovskii/tail.hpp"

using namespace sadovskii;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Case {
  std::string name;
  SolveConfig config;
};

struct Solved {
  std::string name;
  DipoleProfile profile;
  double seconds = 0.0;
};

SolveConfig regular(double p, double mu, double nu, int nx, double cell) {
  SolveConfig c;
  c.p = p;
  c.mu = mu;
  c.nu = nu;
  c.grid = GridSpec::centered(nx, nx / 2, cell);
  c.max_iter = 2000;
  return c;
}

SolveConfig patch(double mu) {
  SolveConfig c;
  c.mode = Mode::patch;
  c.mu = mu;
  c.grid = GridSpec::centered(100, 50, 0.02);
  c.adaptive_domain = false;
  c.max_iter = 2000;
  return c;
}

DipoleProfile lamb_at(int nx, int ny) {
  const LambParams lp;
  return lamb_dipole(lp, lamb_grid(lp, nx, ny));
}

// 1: moment / x2^2 constant across the sample.
void kernel_moment() {
  const auto t0 = Clock::now();
  std::vector<double> ratios;
  for (int k = 0; k < 20; ++k) {
    const double x2 = 0.25 * std::pow(16.0, k / 19.0);
    const double x1 = -10.0 + 20.0 * ((k * 7) % 20) / 19.0;
    ratios.push_back(green_pnorm_moment({x1, x2}, 3.0) / (x2 * x2));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  double mean = 0.0;
  for (double r : ratios) mean += r / ratios.size();
  const double spread = std::max(*hi - mean, mean - *lo) / mean;
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "spread=" << fmt("%.2e", spread) << " (tol 1e-2) C=" << fmt("%.6f", mean)
    << " time=" << fmt("%.2fs", t);
  verdict(1, "kernel moment scaling", spread < 1e-2 && t < 10.0, d.str());
}

// 2: analytic Lamb dipole is a discrete fixed point, improving with resolution.
void lamb_fixed_point() {
  const auto t0 = Clock::now();
  const double coarse = fixed_point_residual(lamb_at(96, 48));
  const double fine = fixed_point_residual(lamb_at(192, 96));
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "res(192x96)=" << fmt("%.3e", fine) << " res(96x48)=" << fmt("%.3e", coarse)
    << " time=" << fmt("%.2fs", t);
  verdict(2, "Lamb fixed point", fine < 1e-2 && fine < coarse && t < 60.0, d.str());
}

// 3: energy identity and the companion Lp relation.
void pohozaev(const DipoleProfile& lamb, const std::vector<Solved>& set) {
  bool ok = true;
  double worst = 0.0;
  std::string worst_name;
  std::ostringstream d;
  auto check = [&](const std::string& name, const DipoleProfile& prof) {
    if (!prof.converged) {
      ok = false;
      d << name << ":not-converged ";
      return;
    }
    for (const IdentityReport& r : pohozaev_check(prof, 0.05)) {
      ok = ok && r.pass;
      if (r.rel_err >= worst) {
        worst = r.rel_err;
        worst_name = name + "/" + r.name;
      }
    }
  };
  check("lamb", lamb);
  for (const Solved& s : set) check(s.name, s.profile);
  d << "worst rel=" << fmt("%.2e", worst) << " (" << worst_name << ", tol 5e-2) profiles="
    << set.size() + 1;
  verdict(3, "Pohozaev identity", ok, d.str());
}

// 4: speed from the image double integral.
void speed_formula(const DipoleProfile& lamb, const std::vector<Solved>& set) {
  const double lamb_rel = rel(traveling_speed_formula(lamb.field), LambParams{}.speed_U);
  double worst = 0.0;
  std::string worst_name;
  bool ok = lamb_rel < 0.02;
  for (const Solved& s : set) {
    const double e = rel(traveling_speed_formula(s.profile.field), s.profile.W);
    ok = ok && e < 0.03;
    if (e >= worst) {
      worst = e;
      worst_name = s.name;
    }
  }
  std::ostringstream d;
  d << "lamb rel=" << fmt("%.2e", lamb_rel) << " (tol 2e-2) solver worst rel=" << fmt("%.2e", worst)
    << " (" << worst_name << ", tol 3e-2)";
  verdict(4, "traveling speed formula", ok, d.str());
}

// 5: small-impulse patch scaling.
void patch_scaling(const DipoleProfile& small, const DipoleProfile& large, double seconds) {
  const auto r = scaling_check(small, large, 0.05, 0.10);
  bool ok = seconds < 600.0 && small.converged && large.converged;
  for (const auto& x : r) ok = ok && x.pass;
  std::ostringstream d;
  d << "W ratio=" << fmt("%.5f", r[0].lhs) << " (target " << fmt("%.4f", r[0].rhs)
    << ", tol 5%) E ratio=" << fmt("%.5f", r[1].lhs) << " (target " << fmt("%.4f", r[1].rhs)
    << ", tol 10%) time=" << fmt("%.1fs", seconds);
  verdict(5, "patch scaling laws", ok, d.str());
}

// 6: u1(0,0) > 2W on touching profiles.
void touching(const DipoleProfile& lamb, const std::vector<Solved>& set) {
  IdentityReport l = touching_check(lamb);
  const double comoving = l.extras["comoving_ratio"];
  bool ok = l.pass && rel(comoving, 2.48) < 0.02;
  int count = 0;
  double least = 1e300;
  for (const Solved& s : set) {
    if (!s.profile.converged || s.profile.gamma > 0.0) continue;
    IdentityReport r = touching_check(s.profile);
    ok = ok && r.pass;
    ++count;
    least = std::min(least, r.extras["u1_over_W"]);
  }
  std::ostringstream d;
  d << "lamb u1/W-1=" << fmt("%.4f", comoving) << " (target 2.48, tol 2%) lab u1/W="
    << fmt("%.4f", l.extras["u1_over_W"]) << " solver profiles=" << count
    << " min u1/W=" << fmt("%.3f", least);
  verdict(6, "touching criterion", ok, d.str());
}

// 7: near-axis power law.
void exponent(const DipoleProfile& p14, const DipoleProfile& p2) {
  const double a = exponent_fit(p14);
  const double b = exponent_fit(p2);
  const double lamb = exponent_fit(lamb_at(192, 96));
  std::ostringstream d;
  d << "p=1.4 slope=" << fmt("%.4f", a) << " (in [2.2,2.8]) p=2 slope=" << fmt("%.4f", b)
    << " (in [0.9,1.1]) lamb slope=" << fmt("%.4f", lamb);
  verdict(7, "regularity exponent", a >= 2.2 && a <= 2.8 && b >= 0.9 && b <= 1.1, d.str());
}

struct Drift {
  double impulse = 0.0;
  double energy = 0.0;
};

Drift drift(const DiagnosticsSeries& s) {
  Drift d;
  const auto& r0 = s.records.front();
  for (const auto& r : s.records) {
    d.impulse = std::max(d.impulse, rel(r.impulse, r0.impulse));
    d.energy = std::max(d.energy, rel(r.energy, r0.energy));
  }
  return d;
}

// 8: blob evolution of the Lamb dipole and of a solved patch.
void conservation(const DipoleProfile& patch_profile) {
  struct Run {
    std::string name;
    ParticleEnsemble start;
    double speed;
  };
  const LambParams lp;
  std::vector<Run> runs = {{"lamb", discretize(lamb_at(48, 24).field), lp.speed_U},
                           {"patch", discretize(patch_profile.field), patch_profile.W}};
  bool ok = true;
  std::ostringstream d;
  for (const Run& r : runs) {
    RunOptions o;
    o.T = 5.0;
    o.dt = suggested_dt(r.start);
    o.record_every = 10;
    const auto t0 = Clock::now();
    const DiagnosticsSeries s = run(r.start, o);
    const Drift dr = drift(s);
    const double speed_err = rel(estimate_shift(s).fitted_speed, r.speed);
    ok = ok && dr.impulse < 5e-3 && dr.energy < 1e-2 && speed_err < 2e-2;
    d << r.name << "[N=" << r.start.size() << " dI=" << fmt("%.1e", dr.impulse)
      << " dE=" << fmt("%.1e", dr.energy) << " dW=" << fmt("%.1e", speed_err)
      << " t=" << fmt("%.1fs", seconds_since(t0)) << "] ";
  }
  d << "(tol 5e-3, 1e-2, 2e-2)";
  verdict(8, "conservation under evolution", ok, d.str());
}

double perimeter_at(const DiagnosticsSeries& s, double t) {
  const auto& r = s.records;
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k].time >= t) {
      const double w = (t - r[k - 1].time) / (r[k].time - r[k - 1].time);
      return (1 - w) * *r[k - 1].perimeter + w * *r[k].perimeter;
    }
  }
  return *r.back().perimeter;
}

// 9: perimeter of a tailed patch grows.
void perimeter_growth(const DipoleProfile& prof) {
  const ContourPolygon base = patch_contour(prof.field, prof.lambda);
  double top = 0.0;
  for (const Point& p : base.vertices) top = std::max(top, p.x2);
  const double half = max_abs_x1(base);
  TailParams tp;
  tp.tail_length = 2.0 * half;
  tp.spike_center = 0.4 * top;
  tp.epsilon = 0.08 * half;
  tp.spike_halfwidth = 0.6 * tp.epsilon;
  const TailConstruction tc = build_tailed_contour(base, tp);
  const ParticleEnsemble e = discretize(tc.contour, prof.field.spec().cell, prof.lambda);
  RunOptions o;
  o.T = 5.0;
  o.dt = suggested_dt(e);
  o.record_every = 10;
  const auto t0 = Clock::now();
  const DiagnosticsSeries s = run(e, o, tc.contour);
  int drops = 0;
  for (std::size_t k = 1; k < s.records.size(); ++k) {
    if (!(*s.records[k].perimeter > *s.records[k - 1].perimeter)) ++drops;
  }
  const double rate = (perimeter_at(s, 5.0) - perimeter_at(s, 2.0)) / 3.0;
  const double floor = 0.25 * prof.W;
  std::ostringstream d;
  d << "records=" << s.records.size() << " non-increasing steps=" << drops
    << " rate[2,5]=" << fmt("%.4f", rate) << " floor=" << fmt("%.4f", floor)
    << " perimeter " << fmt("%.3f", *s.records.front().perimeter) << "->"
    << fmt("%.3f", *s.records.back().perimeter) << " time=" << fmt("%.1fs", seconds_since(t0));
  verdict(9, "perimeter growth", drops == 0 && rate >= floor, d.str());
}

// 10: Steiner symmetrization on random fields.
void symmetrization() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool norms = true, impulse = true, energy = true, idem = true;
  double worst_drop = 0.0;
  for (int n = 0; n < 100; ++n) {
    const int nx = 2 * (4 + static_cast<int>(u(rng) * 12));
    const int ny = 3 + static_cast<int>(u(rng) * 10);
    GridField f(GridSpec::centered(nx, ny, 0.1));
    const double fill = 0.2 + 0.7 * u(rng);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (u(rng) < fill) f.set(i, j, n % 4 == 0 ? 1.0 : u(rng));
      }
    }
    const GridField s = steiner_symmetrize(f);
    for (double p : {1.5, 2.0, 3.0}) {
      const GridNorms a = grid_norms(f, p), b = grid_norms(s, p);
      norms = norms && a.mass == b.mass && a.lp_norm == b.lp_norm;
      impulse = impulse && a.impulse == b.impulse;
    }
    const double ef = kinetic_energy(f), es = kinetic_energy(s);
    if (es < ef) {
      worst_drop = std::max(worst_drop, (ef - es) / ef);
      energy = energy && (ef - es) <= 1e-12 * ef;
    }
    idem = idem && std::ranges::equal(steiner_symmetrize(s).values(), s.values());
  }
  std::ostringstream d;
  d << "norms=" << (norms ? "exact" : "changed") << " impulse=" << (impulse ? "exact" : "changed")
    << " energy=" << (energy ? "non-decreasing" : "decreased") << " (worst drop "
    << fmt("%.1e", worst_drop) << ") idempotent=" << (idem ? "yes" : "no");
  verdict(10, "symmetrization suite", norms && impulse && energy && idem, d.str());
}

}  // namespace

int main() {
  const auto start = Clock::now();
  kernel_moment();
  lamb_fixed_point();

  std::vector<Case> cases = {
      {"p2_mu1", regular(2.0, 1.0, 1.0, 128, 0.05)},
      {"p2_nu0.3", regular(2.0, 1.0, 0.3, 128, 0.05)},
      {"p3", regular(3.0, 1.0, 1.0, 128, 0.05)},
      {"p1.4_mu0.02", regular(1.4, 0.02, 1.0, 128, 0.05)},
      {"p2_mu1_fine", regular(2.0, 1.0, 1.0, 256, 0.05)},
      {"patch_mu0.05", patch(0.05)},
      {"patch_mu0.00625", patch(0.00625)},
  };
  std::vector<Solved> set;
  for (const Case& c : cases) {
    const auto t0 = Clock::now();
    set.push_back({c.name, solve_dipole(c.config), seconds_since(t0)});
    const DipoleProfile& p = set.back().profile;
    std::printf("     solved %-16s converged=%d iterations=%d W=%.6g gamma=%.4g time=%.1fs\n",
                c.name.c_str(), p.converged, p.iterations, p.W, p.gamma, set.back().seconds);
    std::fflush(stdout);
  }
  auto find = [&](const std::string& name) -> const Solved& {
    return *std::find_if(set.begin(), set.end(), [&](const Solved& s) { return s.name == name; });
  };

  const DipoleProfile lamb = lamb_at(192, 96);
  pohozaev(lamb, set);
  speed_formula(lamb, set);
  const Solved& large = find("patch_mu0.05");
  const Solved& small = find("patch_mu0.00625");
  patch_scaling(small.profile, large.profile, large.seconds + small.seconds);
  touching(lamb, set);
  exponent(find("p1.4_mu0.02").profile, find("p2_mu1_fine").profile);
  conservation(large.profile);
  perimeter_growth(large.profile);
  symmetrization();

  std::printf("%d of 10 criteria failed; total time %.1fs\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
