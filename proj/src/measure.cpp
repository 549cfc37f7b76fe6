#include "parabolab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parabolab {

std::vector<double> distribution_measure(const GridFunction& g, std::span<const double> thresholds) {
  const GridSpec& grid = g.grid();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.in_ball(i) && g[i] < 0.0)
      throw std::invalid_argument("distribution_measure: negative value");
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid.in_ball(i) && g[i] > t) ++count;
    out.push_back(grid.cell_volume() * static_cast<double>(count));
  }
  return out;
}

DyadicParams default_dyadic(int ndim, double p) { return {std::sqrt(double(ndim)), 2.0, p}; }

double dyadic_constant(const DyadicParams& q) {
  if (!(q.eta > 0.0) || !(q.M > 1.0) || !(q.p > 0.0))
    throw std::invalid_argument("dyadic: need eta > 0, M > 1, p > 0");
  const double Mp = std::pow(q.M, q.p);
  return std::max(std::pow(q.eta * q.M, q.p), Mp / (std::pow(q.eta, q.p) * (Mp - 1.0)));
}

DyadicResult dyadic_norm(const GridFunction& g, const DyadicParams& params) {
  DyadicResult r;
  r.constant = dyadic_constant(params);
  r.norm_pow = lp_norm_pow(g, params.p);
  const GridSpec& grid = g.grid();
  r.omega = ball_measure(grid);
  const double gmax = g.sup_norm();
  for (int k = 1;; ++k) {
    const double level = params.eta * std::pow(params.M, k);
    if (!(level < gmax)) break;  // {g > level} is empty from here on
    std::size_t count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid.in_ball(i) && g[i] > level) ++count;
    if (count == 0) break;
    r.s += std::pow(params.M, params.p * k) * grid.cell_volume() * static_cast<double>(count);
    r.levels = k;
  }
  r.lower_ok = r.s / r.constant <= r.norm_pow * (1.0 + 1e-12);
  r.upper_ok = r.norm_pow <= r.constant * (r.s + r.omega) * (1.0 + 1e-12);
  return r;
}

double DecayReport::measure(const DecayStep& s) const {
  switch (direction) {
    case Direction::lower: return s.measure_lower;
    case Direction::upper: return s.measure_upper;
    case Direction::both: return s.measure_both;
  }
  return s.measure_lower;
}

DecayReport decay_profile(const GridFunction& u, Direction direction, const Ladder& ladder) {
  if (!(ladder.t0 >= 1.0) || !(ladder.M > 1.0) || ladder.kmax < 3)
    throw std::invalid_argument("decay_profile: need t0 >= 1, M > 1, kmax >= 3");
  const GridSpec& g = u.grid();
  const VertexSet V = VertexSet::full(u.grid_ptr());
  const double ball = ball_measure(g);

  DecayReport rep;
  rep.direction = direction;
  rep.ladder = ladder;
  rep.fitted_M = ladder.M;
  for (int k = 0; k <= ladder.kmax; ++k) {
    const double t = ladder.t0 * std::pow(ladder.M, k);
    const ContactSet lo = contact_set(u, t, V, Direction::lower);
    const ContactSet up = contact_set(u, t, V, Direction::upper);
    DecayStep s;
    s.k = k;
    s.t = t;
    s.measure_lower = ball - measure(lo.mask);
    s.measure_upper = ball - measure(up.mask);
    s.measure_both = ball - measure(lo.mask & up.mask);
    rep.steps.push_back(s);
  }

  std::vector<double> xs, ys;
  std::vector<int> ks;
  bool any = false;
  for (const auto& s : rep.steps) {
    const double m = rep.measure(s);
    if (m > 0.0) any = true;
    if (s.k == 0 || !(m > 0.0)) continue;
    xs.push_back(std::log(s.t));
    ys.push_back(std::log(m));
    ks.push_back(s.k);
  }
  if (!any) {
    rep.saturated = true;
    rep.sigma = std::numeric_limits<double>::infinity();
    rep.theta = 0.0;
    return rep;
  }
  rep.fit_points = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    rep.sigma = std::numeric_limits<double>::quiet_NaN();
    rep.theta = std::numeric_limits<double>::quiet_NaN();
    if (!ks.empty()) rep.fit_first = rep.fit_last = ks.front();
    return rep;
  }
  const double nx = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= nx;
  my /= nx;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  rep.sigma = -slope;
  rep.intercept = my - slope * mx;
  rep.theta = std::pow(ladder.M, -rep.sigma);
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (rep.intercept + slope * xs[i]);
    rss += e * e;
  }
  rep.fit_residual = std::sqrt(rss / nx);
  rep.fit_first = ks.front();
  rep.fit_last = ks.back();
  return rep;
}

double hessian_norm_direct(const GridFunction& u, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("w2delta: delta must be positive");
  const GridSpec& g = u.grid();
  const Derivatives d = fd_derivatives(u);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (d.valid[i]) {
      const double hf = d.hessian[i].frobenius();
      if (hf > 0.0) s += std::pow(hf, delta);
    }
  return std::pow(g.cell_volume() * s, 1.0 / delta);
}

DecayBound decay_route_bound(const GridFunction& u, double delta, double M) {
  if (!(delta > 0.0)) throw std::invalid_argument("w2delta: delta must be positive");
  if (!(M > 1.0)) throw std::invalid_argument("w2delta: M must exceed 1");
  const GridSpec& g = u.grid();
  const double rn = std::sqrt(double(g.ndim()));
  const Derivatives d = fd_derivatives(u);
  DecayBound b;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (d.valid[i]) b.max_hessian = std::max(b.max_hessian, d.hessian[i].frobenius());
  int kmax = 1;
  while (rn * std::pow(M, kmax + 1) < b.max_hessian) ++kmax;
  b.ladder = Ladder{1.0, M, kmax};

  const VertexSet V = VertexSet::full(u.grid_ptr());
  const double ball = ball_measure(g);
  double sum = std::pow(rn * M, delta) * ball;
  for (int k = 1; k <= kmax; ++k) {
    const double t = std::pow(M, k);
    const ContactSet both = contact_set(u, t, V, Direction::both);
    const double c = ball - measure(both.mask);
    b.complement.push_back(c);
    sum += std::pow(rn * std::pow(M, k + 1), delta) * c;
  }
  b.value = std::pow(sum, 1.0 / delta);
  return b;
}

double w2delta_estimate(const GridFunction& u, double delta, Route route) {
  return route == Route::direct ? hessian_norm_direct(u, delta) : decay_route_bound(u, delta).value;
}

RouteComparison compare_routes(const GridFunction& u, double delta, double slack) {
  RouteComparison c;
  c.direct = hessian_norm_direct(u, delta);
  c.decay = decay_route_bound(u, delta).value;
  c.consistent = c.direct <= c.decay * (1.0 + slack);
  return c;
}

InclusionReport inclusion_check(const GridFunction& u, double t) {
  const GridSpec& g = u.grid();
  const double rn = std::sqrt(double(g.ndim()));
  const Derivatives d = fd_derivatives(u);
  const ContactSet both = contact_set(u, t, VertexSet::full(u.grid_ptr()), Direction::both);
  InclusionReport r;
  r.t = t;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!d.valid[i] || !(d.hessian[i].frobenius() > rn * t)) continue;
    ++r.large_hessian;
    if (both.mask.contains(i)) {
      ++r.violations;
      if (r.locations.size() < 16) r.locations.push_back(i);
    }
  }
  return r;
}

NormalizationResult normalize_and_ratio(const GridFunction& u, const GridFunction& f,
                                        const SingularExponent& gamma, double eps_guard, double delta) {
  if (!(eps_guard > 0.0)) throw std::invalid_argument("normalize: eps_guard must be positive");
  NormalizationResult r;
  r.scaling.eps_guard = eps_guard;
  r.u_sup = u.sup_norm();
  r.f_sup = f.sup_norm();
  const double q = 1.0 / (1.0 - gamma.value());
  const double fq = std::pow(r.f_sup, q);
  double a = 1.0 / (16.0 * r.u_sup + fq + eps_guard);
  const double expo = 1.0 - gamma.value();
  // the bounds hold in exact arithmetic; step a down if rounding breaks them
  for (;;) {
    r.u_scaled_sup = u.scaled(a).sup_norm();
    r.f_scaled_sup = f.scaled(std::pow(a, expo)).sup_norm();
    if (r.u_scaled_sup <= 1.0 / 16.0 && r.f_scaled_sup <= 1.0) break;
    a = std::nextafter(a, 0.0);
  }
  r.scaling.a = a;
  r.hypothesis_ok = true;
  r.seminorm = hessian_norm_direct(u, delta);
  r.denominator = r.u_sup + fq + eps_guard;
  r.ratio = r.seminorm / r.denominator;
  return r;
}

}  // namespace parabolab
