#include "sadovskii/tail.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <memory>
#include <vector>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

constexpr int kWindowSamples = 2001;

// Piecewise-linear samples of the smoothed base width on a uniform grid.
class SmoothedWidth {
 public:
  SmoothedWidth(const ContourPolygon& base, double top, double eta) : step_(eta / 16.0) {
    const int n = static_cast<int>(std::ceil(top / step_)) + 2;
    const int m = 16;
    std::vector<double> raw(n + m + 1);
    for (int k = 0; k < static_cast<int>(raw.size()); ++k) {
      raw[k] = half_width_at(base, k * step_);
    }
    auto even = [&](int k) { return raw[std::abs(k)]; };
    std::vector<double> w(2 * m + 1);
    double norm = 0.0;
    for (int q = -m; q <= m; ++q) norm += w[q + m] = unit_bump(static_cast<double>(q) / m);
    values_.resize(n);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int q = -m; q <= m; ++q) s += w[q + m] * even(k - q);
      values_[k] = s / norm;
    }
  }

  double operator()(double y) const {
    if (y < 0.0) y = -y;
    const double u = y / step_;
    const auto k = static_cast<std::size_t>(u);
    if (k + 1 >= values_.size()) return 0.0;
    const double t = u - k;
    return (1.0 - t) * values_[k] + t * values_[k + 1];
  }

  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double at(std::size_t k) const { return values_[k]; }

 private:
  double step_;
  std::vector<double> values_;
};

struct Spike {
  double center = 0.0;
  double halfwidth = 0.0;
  double t = 0.0;

  [[nodiscard]] double reach() const { return halfwidth / std::max(1.0, t); }
  [[nodiscard]] double operator()(double s) const {
    const double u = (s - center) / halfwidth;
    return t <= 1.0 ? t * unit_bump(u) : t * unit_bump(t * u);
  }
};

struct WindowMax {
  double value = 0.0;
  double where = 0.0;
};

WindowMax window_max(const SmoothedWidth& l, const Spike& k) {
  const double lo = k.center - k.reach();
  const double hi = k.center + k.reach();
  auto g = [&](double s) { return l(s) * (1.0 + k(s)); };
  WindowMax best{g(k.center), k.center};
  const double ds = (hi - lo) / (kWindowSamples - 1);
  for (int q = 0; q < kWindowSamples; ++q) {
    const double s = lo + q * ds;
    const double v = g(s);
    if (v > best.value) best = {v, s};
  }
  double a = std::max(lo, best.where - ds);
  double b = std::min(hi, best.where + ds);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c = b - r * (b - a);
    const double d = a + r * (b - a);
    if (g(c) >= g(d)) b = d;
    else a = c;
  }
  const double s = 0.5 * (a + b);
  if (g(s) > best.value) best = {g(s), s};
  return best;
}

}  // namespace

void TailParams::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("tail: epsilon must be positive");
  if (!(tail_length > 0.0)) throw InvalidArgument("tail: tail_length must be positive");
  if (!(spike_center > 0.0)) throw InvalidArgument("tail: spike_center must be positive");
  if (!(spike_halfwidth > 0.0)) throw InvalidArgument("tail: spike_halfwidth must be positive");
  if (!(spike_halfwidth < epsilon)) {
    throw InvalidArgument("tail: spike_halfwidth must be smaller than epsilon");
  }
  if (!(3.0 * spike_halfwidth <= spike_center)) {
    throw InvalidArgument("tail: the spike window must clear the bottom transition (a >= 3 delta)");
  }
  if (support_height < 0.0) throw InvalidArgument("tail: support_height must be nonnegative");
  if (smoothing_width < 0.0) throw InvalidArgument("tail: smoothing_width must be nonnegative");
}

double transition_H(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double e = std::exp(1.0 - 1.0 / x);
  if (e >= 1.0) return 0.0;
  return 1.0 / (1.0 - std::log1p(-e));
}

double unit_bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double unit_bump_integral() {
  static const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(unit_bump, -1.0, 1.0, 15,
                                                                     1e-14);
  return value;
}

TailConstruction build_tailed_contour(const ContourPolygon& base, const TailParams& params) {
  params.validate();
  if (base.size() < 3) throw InvalidArgument("tail: base contour needs at least 3 vertices");
  double base_top = 0.0;
  for (const Point& p : base.vertices) base_top = std::max(base_top, p.x2);

  const double eps = params.epsilon;
  const double L = params.tail_length;
  const double a = params.spike_center;
  const double delta = params.spike_halfwidth;
  const double top = params.support_height > 0.0 ? params.support_height : 1.1 * base_top;
  if (!(a + delta <= top)) {
    throw InvalidArgument("tail: the spike window must lie below the support height");
  }
  const double eta =
      params.smoothing_width > 0.0 ? params.smoothing_width : 0.25 * std::min(eps, delta);

  auto l_eps = std::make_shared<SmoothedWidth>(base, top + delta, eta);
  const SmoothedWidth& l = *l_eps;

  Spike spike;
  spike.center = a;
  spike.halfwidth = std::min(delta, 0.8 * eps / unit_bump_integral());
  if (!(l(a - delta) > 0.0 && l(a + delta) > 0.0 && l(a) > 0.0)) {
    throw InvalidArgument("tail: the base width must be positive on the spike window");
  }

  const double target = L - eps;
  double outside = 0.0;
  for (std::size_t k = 0; k < l.size(); ++k) {
    const double y = k * l.step();
    if (std::abs(y - a) >= spike.halfwidth) outside = std::max(outside, l.at(k));
  }
  if (outside > target) {
    throw InvalidArgument("tail: tail_length must exceed the base half-width plus epsilon");
  }
  spike.t = 0.0;
  if (window_max(l, spike).value > target) {
    throw InvalidArgument("tail: tail_length must exceed the base half-width plus epsilon");
  }

  double t_lo = 0.0, t_hi = 1.0;
  for (spike.t = t_hi; window_max(l, spike).value < target; spike.t = t_hi) {
    t_lo = t_hi;
    t_hi *= 2.0;
    if (t_hi > 1e12) throw InvalidArgument("tail: spike amplitude search diverged");
  }
  for (int it = 0; it < 200 && t_hi - t_lo > 1e-14 * t_hi; ++it) {
    spike.t = 0.5 * (t_lo + t_hi);
    (window_max(l, spike).value < target ? t_lo : t_hi) = spike.t;
  }
  spike.t = t_hi;
  const WindowMax apex = window_max(l, spike);

  auto zeta = [l_eps, spike, delta, top, eps](double y) {
    if (y <= delta || y >= top + delta) return 0.0;
    double h = 1.0;
    if (y < 2.0 * delta) h = transition_H((2.0 * delta - y) / delta);
    else if (y > top) h = transition_H((y - top) / delta);
    return h * ((*l_eps)(y) * (1.0 + spike(y)) + eps);
  };

  // Heights: uniform, spike window, apex; then adaptive refinement.
  std::vector<double> ys;
  const int n0 = 512;
  for (int k = 0; k <= n0; ++k) ys.push_back(delta + top * k / n0);
  const double reach = spike.reach();
  for (int k = 0; k <= 200; ++k) ys.push_back(a - reach + 2.0 * reach * k / 200);
  ys.push_back(apex.where);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const double hmax = std::max(top, L) / 256.0;
  const double dev_tol = hmax / 50.0;
  std::vector<double> refined{ys.front()};
  auto point = [&](double y) { return Point{zeta(y), y}; };
  auto split = [&](auto&& self, double y0, double y1, int depth) -> void {
    const Point p0 = point(y0), p1 = point(y1);
    const double ym = 0.5 * (y0 + y1);
    const Point pm = point(ym);
    const double chord = distance(p0, p1);
    const double dev = std::abs(pm.x1 - 0.5 * (p0.x1 + p1.x1));
    if (depth < 40 && y1 - y0 > 1e-13 && (chord > hmax || dev > dev_tol)) {
      self(self, y0, ym, depth + 1);
      self(self, ym, y1, depth + 1);
    } else {
      refined.push_back(y1);
    }
  };
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) split(split, ys[k], ys[k + 1], 0);

  TailConstruction out;
  ContourPolygon& c = out.contour;
  c.touches_axis = false;
  for (double y : refined) c.vertices.push_back(point(y));
  for (std::size_t k = refined.size() - 1; k-- > 1;) {
    c.vertices.push_back({-zeta(refined[k]), refined[k]});
  }
  // Apex lands exactly on L.
  for (Point& p : c.vertices) {
    if (p.x2 == apex.where) p.x1 = std::copysign(L, p.x1);
  }

  std::vector<double> grid;
  const double h = l.step();
  for (double y = 0.0; y <= top + 2.0 * delta; y += h) grid.push_back(y);
  for (int k = 0; k <= 4000; ++k) grid.push_back(a - reach + 2.0 * reach * k / 4000);
  std::sort(grid.begin(), grid.end());
  double l1 = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double f0 = std::abs(zeta(grid[k]) - half_width_at(base, grid[k]));
    const double f1 = std::abs(zeta(grid[k + 1]) - half_width_at(base, grid[k + 1]));
    l1 += 0.5 * (f0 + f1) * (grid[k + 1] - grid[k]);
  }

  out.amplitude = spike.t;
  out.apex_height = apex.where;
  out.base_top = base_top;
  out.support_height = top;
  out.spike_l1 = spike.halfwidth * unit_bump_integral() * std::min(1.0, spike.t);
  out.width_l1 = l1;
  out.width = zeta;
  return out;
}

ContourPolygon make_tailed_contour(const ContourPolygon& base, const TailParams& params) {
  return build_tailed_contour(base, params).contour;
}

}  // namespace sadovskii
