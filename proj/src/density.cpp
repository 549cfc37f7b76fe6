#include "parabolab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parabolab/parallel.hpp"
#include "parabolab/random.hpp"

namespace parabolab {

WitnessResult nonempty_witness(const GridFunction& u, double K) {
  if (!(K >= 1.0)) throw std::invalid_argument("nonempty_witness: need K >= 1");
  if (u.sup_norm() > 1.0 / 16.0)
    throw std::invalid_argument("nonempty_witness: hypothesis ||u||_inf <= 1/16 violated");
  const GridSpec& g = u.grid();
  const int n = g.ndim();
  WitnessResult w;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.in_ball(i)) continue;
    const double r = norm(g.coords(i), n);
    const double v = u[i] + 0.5 * K * r * r;
    if (v < best) {
      best = v;
      w.node = i;
    }
  }
  w.x = g.coords(w.node);
  w.radius = norm(w.x, n);
  w.within_half = w.radius <= 0.5 + g.spacing();
  const ContactSet T = contact_set(u, K, VertexSet::full(u.grid_ptr()), Direction::lower);
  w.in_contact = T.mask.contains(w.node);
  return w;
}

std::vector<std::size_t> ball_nodes(const GridSpec& g, const Ball& b) {
  const int n = g.ndim();
  const int m = g.cells_per_axis();
  const double h = g.spacing();
  Index lo{0, 0, 0}, hi{0, 0, 0};
  for (int d = 0; d < n; ++d) {
    lo[d] = std::max(0, static_cast<int>(std::floor((b.center[d] - b.radius + 1.0) / h)));
    hi[d] = std::min(m - 1, static_cast<int>(std::ceil((b.center[d] + b.radius + 1.0) / h)));
  }
  std::vector<std::size_t> out;
  Index i = lo;
  for (;;) {
    const std::size_t idx = g.flat_index(i);
    if (g.in_ball(idx) && distance(g.coords(idx), b.center, n) < b.radius) out.push_back(idx);
    int d = n - 1;
    while (d >= 0 && i[d] == hi[d]) {
      i[d] = lo[d];
      --d;
    }
    if (d < 0) break;
    ++i[d];
  }
  return out;
}

DensityScanReport density_scan(const GridFunction& u, double K, const std::vector<double>& M_candidates,
                               std::size_t ball_samples, std::uint64_t seed) {
  if (!(K >= 1.0)) throw std::invalid_argument("density_scan: need K >= 1");
  for (double M : M_candidates)
    if (!(M > 1.0)) throw std::invalid_argument("density_scan: every M must exceed 1");
  const GridSpec& g = u.grid();
  const int n = g.ndim();
  const double h = g.spacing();
  const VertexSet V = VertexSet::full(u.grid_ptr());
  const CellSet TK = contact_set(u, K, V, Direction::lower).mask;
  std::vector<CellSet> TKM;
  for (double M : M_candidates) TKM.push_back(contact_set(u, K * M, V, Direction::lower).mask);

  DensityScanReport rep;
  rep.K = K;
  rep.M = M_candidates;
  rep.seed = seed;
  rep.sampled = ball_samples;
  rep.min_ratio.assign(M_candidates.size(), std::numeric_limits<double>::infinity());
  rep.worst_ball.assign(M_candidates.size(), Ball{});

  const double r_lo = std::min(4.0 * h, 0.5);
  std::vector<Ball> balls(ball_samples);
  std::vector<std::vector<double>> ratios(ball_samples);
  std::vector<std::uint8_t> keep(ball_samples, 0);
  parallel_for(ball_samples, [&](std::size_t s) {
    auto rng = split_stream(seed, s);
    Ball b;
    b.radius = uniform(rng, r_lo, 0.5);
    const double R = 1.0 - b.radius;
    for (;;) {
      for (int d = 0; d < n; ++d) b.center[d] = uniform(rng, -R, R);
      if (norm(b.center, n) <= R) break;
    }
    balls[s] = b;
    const auto nodes = ball_nodes(g, b);
    if (nodes.empty()) return;
    bool meets = false;
    for (std::size_t i : nodes) meets = meets || TK.contains(i);
    if (!meets) return;
    keep[s] = 1;
    for (const CellSet& T : TKM) {
      std::size_t c = 0;
      for (std::size_t i : nodes) c += T.contains(i);
      ratios[s].push_back(double(c) / double(nodes.size()));
    }
  });
  for (std::size_t s = 0; s < ball_samples; ++s) {
    if (!keep[s]) continue;
    ++rep.kept;
    for (std::size_t j = 0; j < M_candidates.size(); ++j)
      if (ratios[s][j] < rep.min_ratio[j]) {
        rep.min_ratio[j] = ratios[s][j];
        rep.worst_ball[j] = balls[s];
      }
  }
  if (rep.kept == 0) std::fill(rep.min_ratio.begin(), rep.min_ratio.end(), 0.0);
  return rep;
}

double BarrierParams::C0() const { return std::exp(A); }

double barrier_phi(double t, double A) { return std::exp(A) * std::exp(-A * t * t) - 1.0; }

BarrierResult barrier_probe(const GridFunction& u, const BarrierParams& q, std::size_t x1_node) {
  if (!(q.A > 1.0)) throw std::invalid_argument("barrier_probe: need A > 1");
  if (!(q.K >= 1.0)) throw std::invalid_argument("barrier_probe: need K >= 1");
  if (!(q.r > 0.0)) throw std::invalid_argument("barrier_probe: need r > 0");
  const GridSpec& g = u.grid();
  const int n = g.ndim();
  if (norm(q.x0, n) + q.r > 1.0 + 1e-12) throw std::invalid_argument("barrier_probe: B_r(x0) leaves B_1");
  if (!g.in_ball(x1_node)) throw std::invalid_argument("barrier_probe: x1 outside the mask");
  const Point x1 = g.coords(x1_node);
  if (distance(x1, q.x0, n) > q.r) throw std::invalid_argument("barrier_probe: x1 not in B_r(x0)");

  const double d1 = distance(x1, q.y1, n);
  const double level = u[x1_node] + 0.5 * q.K * d1 * d1;
  auto P = [&](const Point& x) {
    const double d = distance(x, q.y1, n);
    return -0.5 * q.K * d * d + level;
  };
  const double tol = q.K * g.spacing() * g.spacing();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.in_ball(i) && P(g.coords(i)) > u[i] + tol + 1e-12 * (1.0 + std::abs(u[i])))
      throw std::invalid_argument("barrier_probe: paraboloid through x1 does not touch u from below");

  BarrierResult res;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.in_ball(i)) continue;
    const Point x = g.coords(i);
    const double dist = distance(x, q.x0, n);
    if (dist > q.r) continue;
    const double psi = P(x) + q.K * q.r * q.r * barrier_phi(dist / q.r, q.A);
    const double v = u[i] - psi;
    if (v < best) {
      best = v;
      res.x2_node = i;
    }
  }
  res.x2 = g.coords(res.x2_node);
  res.gap = u[res.x2_node] - P(res.x2);
  res.gap_bound = q.C0() * q.K * q.r * q.r;
  res.gap_ok = res.gap <= res.gap_bound * (1.0 + 1e-12) + 1e-14;
  res.inside_half = distance(res.x2, q.x0, n) < 0.5 * q.r;
  return res;
}

Point touching_vertex(const GridFunction& u, double K, std::size_t node) {
  const TransformResult t = lower_transform(u, K, VertexSet::full(u.grid_ptr()));
  if (t.vertex[node] == kNoSource) throw std::invalid_argument("touching_vertex: no vertex");
  return u.grid().coords(t.vertex[node]);
}

VertexCompareResult vertex_measure_compare(const GridFunction& u, double K, double M, const Point& x2,
                                           const Point& y1, double r, const Point& x0,
                                           const Ellipticity& ell, double envelope_factor) {
  if (!(K >= 1.0) || !(M > 1.0) || !(r > 0.0))
    throw std::invalid_argument("vertex_measure_compare: need K >= 1, M > 1, r > 0");
  const GridSpec& g = u.grid();
  const int n = g.ndim();
  VertexCompareResult res;
  for (int d = 0; d < n; ++d) res.V_ball.center[d] = y1[d] / M + (M - 1.0) * x2[d] / M;
  res.V_ball.radius = r * (M - 1.0) / (8.0 * M);
  const VertexSet V = VertexSet::ball(u.grid_ptr(), res.V_ball.center, res.V_ball.radius);
  res.V_nodes = V.nodes().count();

  const double KM = K * M;
  const ContactSet TV = contact_set(u, KM, V, Direction::lower);
  const ContactSet T = contact_set(u, KM, VertexSet::full(u.grid_ptr()), Direction::lower);
  res.contact_nodes = TV.mask.count();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!TV.mask.contains(i)) continue;
    const bool in_ball = distance(g.coords(i), x0, n) < r;
    if (in_ball && T.mask.contains(i)) continue;
    ++res.outside;
    if (g.on_ring(i)) ++res.outside_ring;
  }
  res.containment = res.contact_nodes > 0 && res.outside == res.outside_ring &&
                    double(res.outside) <= 0.01 * double(res.contact_nodes);
  res.ratio = res.contact_nodes > 0 ? double(res.V_nodes) / double(res.contact_nodes)
                                    : std::numeric_limits<double>::infinity();

  // envelope route: 2 / eps^4 = envelope_factor * K M
  res.envelope_epsilon = std::pow(2.0 / (envelope_factor * KM), 0.25);
  const GridFunction ue = moreau_envelope(u, res.envelope_epsilon);
  res.det_bound = std::pow((n * ell.Lambda() + 4.0) / (n * ell.lambda()), n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!TV.mask.contains(i) || !fd_at(ue, i)) continue;
    ++res.det_checked;
    const VertexMapValue vm = vertex_map(ue, i, KM);
    res.det_max = std::max(res.det_max, vm.jacobian_det);
    if (vm.jacobian_det > res.det_bound * (1.0 + 1e-9)) ++res.det_exceptions;
  }
  res.det_ok = double(res.det_exceptions) <= 0.01 * double(std::max<std::size_t>(res.det_checked, 1));
  return res;
}

DensityProbe density_probe(const GridFunction& u, double K, double M, const Point& x0, double r,
                           double A, const Ellipticity& ell) {
  const GridSpec& g = u.grid();
  const int n = g.ndim();
  const CellSet TK = contact_set(u, K, VertexSet::full(u.grid_ptr()), Direction::lower).mask;
  DensityProbe p;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!TK.contains(i)) continue;
    const double d = distance(g.coords(i), x0, n);
    if (d < best) {
      best = d;
      p.x1_node = i;
    }
  }
  if (!(best < r)) throw std::invalid_argument("density_probe: B_r(x0) does not meet T_K^-");
  p.y1 = touching_vertex(u, K, p.x1_node);
  BarrierParams bp;
  bp.A = A;
  bp.K = K;
  bp.r = r;
  bp.x0 = x0;
  bp.y1 = p.y1;
  p.barrier = barrier_probe(u, bp, p.x1_node);
  p.compare = vertex_measure_compare(u, K, M, p.barrier.x2, p.y1, r, x0, ell);
  return p;
}

}  // namespace parabolab
