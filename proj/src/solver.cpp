#include "parabolab/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "parabolab/random.hpp"
#include <stdexcept>

namespace parabolab {

void SolverConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("solver: max_iterations must be positive");
  if (!(residual_tolerance > 0.0)) throw std::invalid_argument("solver: tolerance must be positive");
  if (eps_schedule.empty()) throw std::invalid_argument("solver: empty regularization schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw std::invalid_argument("solver: schedule entries must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw std::invalid_argument("solver: schedule must be strictly decreasing");
  }
  if (eps_schedule.back() < 1e-8) throw std::invalid_argument("solver: schedule must end at >= 1e-8");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("solver: damping must lie in (0, 1]");
}

namespace {

constexpr std::size_t kFixed = std::numeric_limits<std::size_t>::max();

// Unknowns are the masked nodes off the boundary ring.
struct Layout {
  std::vector<std::size_t> unknown_of;  // box node -> unknown index or kFixed
  std::vector<std::size_t> node_of;     // unknown index -> box node
};

Layout make_layout(const GridSpec& g) {
  Layout L;
  L.unknown_of.assign(g.size(), kFixed);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.in_ball(i) && !g.on_ring(i)) {
      L.unknown_of[i] = L.node_of.size();
      L.node_of.push_back(i);
    }
  return L;
}

std::vector<double> boundary_box(const GridSpec& g, const BoundaryFn& boundary) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    v[i] = boundary(g.coords(i));
    if (!std::isfinite(v[i])) throw std::invalid_argument("solver: boundary data not finite on the box");
  }
  return v;
}

void seed_guess(std::vector<double>& box, const Layout& L, const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t node : L.node_of) {
    double v = 0.0;
    if (cfg.jitter > 0.0) v = cfg.jitter * uniform(rng, -1.0, 1.0);
    box[node] = v;
  }
}

GridFunction to_grid_function(const GridPtr& grid, const std::vector<double>& box) {
  std::vector<double> v(grid->size(), kOutside);
  for (std::size_t i = 0; i < grid->size(); ++i)
    if (grid->in_ball(i)) v[i] = box[i];
  return GridFunction(grid, std::move(v));
}

// One-sided difference cell: anchor plus one neighbour per axis.
struct Cell {
  std::array<std::size_t, 4> node{};  // anchor, then axis neighbours
  std::array<double, 3> sign{};
};

std::vector<Cell> make_cells(const GridSpec& g, const Layout& L, bool skip_fixed) {
  const int n = g.ndim();
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (int orient = 0; orient < (1 << n); ++orient) {
      Cell c;
      c.node[0] = a;
      bool ok = true;
      bool has_unknown = L.unknown_of[a] != kFixed;
      for (int d = 0; d < n && ok; ++d) {
        const int s = (orient >> d) & 1 ? -1 : 1;
        Index delta{0, 0, 0};
        delta[d] = s;
        const auto nb = g.offset(a, delta);
        if (!nb) {
          ok = false;
          break;
        }
        c.node[d + 1] = *nb;
        c.sign[d] = s;
        if (L.unknown_of[*nb] != kFixed) has_unknown = true;
      }
      if (ok && (has_unknown || !skip_fixed)) cells.push_back(c);
    }
  }
  return cells;
}

struct PLaplaceProblem {
  const GridSpec& g;
  const Layout& L;
  const std::vector<Cell>& cells;
  const std::vector<double>& f_box;  // f on unknown nodes, 0 elsewhere
  double p;
  double w;   // h^n / 2^n
  double hn;  // h^n
  double inv_h;

  long double energy(const std::vector<double>& u, double eps) const {
    const int n = g.ndim();
    const long double e2 = static_cast<long double>(eps) * eps;
    long double E = 0.0L;
    for (const Cell& c : cells) {
      long double s = 0.0L;
      for (int d = 0; d < n; ++d) {
        const long double gd = (static_cast<long double>(u[c.node[d + 1]]) - u[c.node[0]]) * inv_h;
        s += gd * gd;
      }
      E += w * std::pow(s + e2, static_cast<long double>(p) / 2.0L) / p;
    }
    for (std::size_t node : L.node_of) E += static_cast<long double>(hn) * f_box[node] * u[node];
    return E;
  }

  // gradient over unknowns; optionally the Hessian triplets
  void derivatives(const std::vector<double>& u, double eps, Eigen::VectorXd& grad,
                   std::vector<Eigen::Triplet<double>>* trip) const {
    const int n = g.ndim();
    grad.setZero(static_cast<Eigen::Index>(L.node_of.size()));
    if (trip) trip->clear();
    for (const Cell& c : cells) {
      std::array<double, 3> gv{};
      double s = 0.0;
      for (int d = 0; d < n; ++d) {
        gv[d] = c.sign[d] * (u[c.node[d + 1]] - u[c.node[0]]) * inv_h;
        s += gv[d] * gv[d];
      }
      const double q = s + eps * eps;
      const double rho = std::pow(q, 0.5 * (p - 2.0));
      // B: row d has -sign/h at the anchor and +sign/h at neighbour d
      std::array<std::array<double, 4>, 3> B{};
      for (int d = 0; d < n; ++d) {
        B[d][0] = -c.sign[d] * inv_h;
        B[d][d + 1] = c.sign[d] * inv_h;
      }
      for (int j = 0; j <= n; ++j) {
        const std::size_t uj = L.unknown_of[c.node[j]];
        if (uj == kFixed) continue;
        double v = 0.0;
        for (int d = 0; d < n; ++d) v += B[d][j] * gv[d];
        grad[static_cast<Eigen::Index>(uj)] += w * rho * v;
      }
      if (!trip) continue;
      // local Hessian in gradient space: w rho (I + (p-2) g g^T / q)
      std::array<std::array<double, 3>, 3> A{};
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          A[a][b] = w * rho * ((a == b ? 1.0 : 0.0) + (p - 2.0) * gv[a] * gv[b] / q);
      for (int i = 0; i <= n; ++i) {
        const std::size_t ui = L.unknown_of[c.node[i]];
        if (ui == kFixed) continue;
        for (int j = 0; j <= n; ++j) {
          const std::size_t uj = L.unknown_of[c.node[j]];
          if (uj == kFixed) continue;
          double v = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) v += B[a][i] * A[a][b] * B[b][j];
          // zeros kept so the sparsity pattern never changes between factorizations
          trip->emplace_back(static_cast<int>(ui), static_cast<int>(uj), v);
        }
      }
    }
    for (std::size_t k = 0; k < L.node_of.size(); ++k)
      grad[static_cast<Eigen::Index>(k)] += hn * f_box[L.node_of[k]];
  }
};

}  // namespace

double plaplace_energy(const GridSpec& grid, std::span<const double> box_values,
                       std::span<const double> f_box, double p, double eps_reg) {
  const Layout L = make_layout(grid);
  const auto cells = make_cells(grid, L, true);
  std::vector<double> fb(f_box.begin(), f_box.end());
  for (std::size_t i = 0; i < fb.size(); ++i)
    if (L.unknown_of[i] == kFixed) fb[i] = 0.0;
  const double h = grid.spacing();
  const PLaplaceProblem P{grid, L, cells, fb, p, grid.cell_volume() / double(1 << grid.ndim()),
                          grid.cell_volume(), 1.0 / h};
  return static_cast<double>(P.energy(std::vector<double>(box_values.begin(), box_values.end()), eps_reg));
}

SolveResult solve_plaplace(const GridFunction& f, const BoundaryFn& boundary, double p,
                           const SolverConfig& cfg) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("solve_plaplace: need 1 < p <= 2");
  cfg.validate();
  const GridSpec& g = f.grid();
  const Layout L = make_layout(g);
  const auto cells = make_cells(g, L, true);
  std::vector<double> f_box(g.size(), 0.0);
  for (std::size_t node : L.node_of) f_box[node] = f[node];
  const double h = g.spacing();
  const PLaplaceProblem P{g, L, cells, f_box, p, g.cell_volume() / double(1 << g.ndim()),
                          g.cell_volume(), 1.0 / h};

  std::vector<double> u = boundary_box(g, boundary);
  seed_guess(u, L, cfg);

  SolveResult res{to_grid_function(f.grid_ptr(), u), false, 0, 0.0, {}, {}};
  if (L.node_of.empty()) {
    res.converged = true;
    return res;
  }

  const auto N = static_cast<Eigen::Index>(L.node_of.size());
  Eigen::VectorXd grad(N), dir(N), trial_grad(N);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::SparseMatrix<double> H(N, N);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;
  int iter = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool stalled = false;

  const int stages = static_cast<int>(cfg.eps_schedule.size());
  for (int stage = 0; stage < stages && !stalled; ++stage) {
    const double eps = cfg.eps_schedule[stage];
    const bool last = stage + 1 == stages;
    const double stage_tol = last ? cfg.residual_tolerance : std::max(cfg.residual_tolerance, 1e-6);
    long double E = P.energy(u, eps);
    for (;;) {
      P.derivatives(u, eps, grad, &trip);
      residual = grad.cwiseAbs().maxCoeff() / P.hn;
      if (residual <= stage_tol) break;
      if (iter >= cfg.max_iterations) {
        stalled = true;
        break;
      }
      H.setFromTriplets(trip.begin(), trip.end());
      if (!analyzed) {
        ldlt.analyzePattern(H);
        analyzed = true;
      }
      ldlt.factorize(H);
      if (ldlt.info() != Eigen::Success) {
        res.warning = "Hessian factorization failed";
        stalled = true;
        break;
      }
      dir = -ldlt.solve(grad);
      const double slope = grad.dot(dir);
      double alpha = 1.0;
      std::vector<double> trial(u);
      long double E_new = 0.0L;
      bool accepted = false;
      // Once the predicted decrease drops below what the energy can resolve,
      // the Armijo test is decided by roundoff; switch the merit to max |grad|.
      const bool resolvable = std::abs(slope) > 1e3L * std::numeric_limits<long double>::epsilon() *
                                                    std::max(1.0L, std::abs(E));
      while (alpha >= 1e-12) {
        for (Eigen::Index k = 0; k < N; ++k) trial[L.node_of[k]] = u[L.node_of[k]] + alpha * dir[k];
        E_new = P.energy(trial, eps);
        if (resolvable) {
          accepted = E_new <= E + 1e-4L * alpha * slope;
        } else {
          P.derivatives(trial, eps, trial_grad, nullptr);
          accepted = trial_grad.cwiseAbs().maxCoeff() / P.hn < residual;
        }
        if (accepted) break;
        alpha *= 0.5;
      }
      ++iter;
      if (!accepted) {
        res.warning = "line search stalled at residual " + std::to_string(residual);
        stalled = true;
        break;
      }
      u.swap(trial);
      E = E_new;
      res.log.push_back({iter, stage, eps, static_cast<double>(E), residual, alpha});
    }
  }
  res.u = to_grid_function(f.grid_ptr(), u);
  res.iterations = iter;
  res.final_residual = residual;
  res.converged = !stalled && residual <= cfg.residual_tolerance;
  if (!res.converged && res.warning.empty())
    res.warning = "iteration limit reached at residual " + std::to_string(residual);
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct Direction2 {
  Index delta;
  double scale;  // |delta|^2 in units of h^2
};

constexpr std::array<Direction2, 4> kDirs{{
    {{1, 0, 0}, 1.0},
    {{0, 1, 0}, 1.0},
    {{1, 1, 0}, 2.0},
    {{1, -1, 0}, 2.0},
}};

struct Policy {
  std::uint8_t frame = 0;  // 0: axis pair, 1: diagonal pair
  std::array<double, 2> coeff{};
  bool operator==(const Policy& o) const { return frame == o.frame && coeff == o.coeff; }
};

std::array<double, 4> directional(const GridSpec& g, std::span<const double> v, std::size_t node) {
  const double h2 = g.spacing() * g.spacing();
  std::array<double, 4> d{};
  for (int k = 0; k < 4; ++k) {
    Index minus{-kDirs[k].delta[0], -kDirs[k].delta[1], 0};
    const auto a = g.offset(node, kDirs[k].delta);
    const auto b = g.offset(node, minus);
    if (!a || !b) throw std::invalid_argument("pucci_discrete: stencil leaves the box");
    d[k] = (v[*a] + v[*b] - 2.0 * v[node]) / (kDirs[k].scale * h2);
  }
  return d;
}

double weight(double d, PucciSign sign, const Ellipticity& ell) {
  if (sign == PucciSign::minus) return d >= 0.0 ? ell.lambda() : ell.Lambda();
  return d >= 0.0 ? ell.Lambda() : ell.lambda();
}

Policy choose_policy(const std::array<double, 4>& d, PucciSign sign, const Ellipticity& ell) {
  Policy best;
  double best_val = 0.0;
  for (std::uint8_t frame = 0; frame < 2; ++frame) {
    const double da = d[2 * frame], db = d[2 * frame + 1];
    const double ca = weight(da, sign, ell), cb = weight(db, sign, ell);
    const double val = ca * da + cb * db;
    const bool better = frame == 0 || (sign == PucciSign::minus ? val < best_val : val > best_val);
    if (better) {
      best = Policy{frame, {ca, cb}};
      best_val = val;
    }
  }
  return best;
}

}  // namespace

double pucci_discrete(const GridSpec& grid, std::span<const double> box_values, std::size_t node,
                      PucciSign sign, const Ellipticity& ell) {
  if (grid.ndim() != 2) throw std::invalid_argument("pucci_discrete: 2-D only");
  const auto d = directional(grid, box_values, node);
  const Policy pol = choose_policy(d, sign, ell);
  return pol.coeff[0] * d[2 * pol.frame] + pol.coeff[1] * d[2 * pol.frame + 1];
}

SolveResult solve_pucci(const GridFunction& f, const BoundaryFn& boundary, PucciSign sign,
                        const Ellipticity& ell, const SolverConfig& cfg) {
  cfg.validate();
  const GridSpec& g = f.grid();
  if (g.ndim() != 2) throw std::invalid_argument("solve_pucci: 2-D only");
  const Layout L = make_layout(g);
  std::vector<double> u = boundary_box(g, boundary);
  seed_guess(u, L, cfg);
  SolveResult res{to_grid_function(f.grid_ptr(), u), false, 0, 0.0, {}, {}};
  if (L.node_of.empty()) {
    res.converged = true;
    return res;
  }
  const auto N = static_cast<Eigen::Index>(L.node_of.size());
  const double h2 = g.spacing() * g.spacing();
  std::vector<Policy> policy(L.node_of.size()), previous;
  Eigen::SparseMatrix<double> A(N, N);
  Eigen::VectorXd rhs(N), sol(N);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<Eigen::Triplet<double>> trip;
  double update = std::numeric_limits<double>::infinity();

  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    for (std::size_t k = 0; k < L.node_of.size(); ++k)
      policy[k] = choose_policy(directional(g, u, L.node_of[k]), sign, ell);
    std::size_t changes = 0;
    if (!previous.empty())
      for (std::size_t k = 0; k < policy.size(); ++k) changes += !(policy[k] == previous[k]);
    if (!previous.empty() && changes == 0 && cfg.damping == 1.0) {
      update = 0.0;
      res.log.push_back({iter + 1, 0, 0.0, 0.0, 0.0, 0.0});
      break;
    }
    trip.clear();
    for (std::size_t k = 0; k < L.node_of.size(); ++k) {
      const std::size_t node = L.node_of[k];
      double diag = 0.0;
      double b = f[node];
      for (int j = 0; j < 2; ++j) {
        const Direction2& dir = kDirs[2 * policy[k].frame + j];
        const double c = policy[k].coeff[j] / (dir.scale * h2);
        diag -= 2.0 * c;
        const Index minus{-dir.delta[0], -dir.delta[1], 0};
        for (const auto& off : {dir.delta, minus}) {
          const std::size_t nb = *g.offset(node, off);
          const std::size_t un = L.unknown_of[nb];
          if (un == kFixed) b -= c * u[nb];
          else trip.emplace_back(static_cast<int>(k), static_cast<int>(un), c);
        }
      }
      trip.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
      rhs[static_cast<Eigen::Index>(k)] = b;
    }
    A.setFromTriplets(trip.begin(), trip.end());
    lu.compute(A);  // the pattern follows the frame choice, so analyze every time
    if (lu.info() != Eigen::Success) {
      res.warning = "policy matrix factorization failed";
      break;
    }
    sol = lu.solve(rhs);
    update = 0.0;
    for (std::size_t k = 0; k < L.node_of.size(); ++k) {
      const std::size_t node = L.node_of[k];
      const double next = (1.0 - cfg.damping) * u[node] + cfg.damping * sol[static_cast<Eigen::Index>(k)];
      update = std::max(update, std::abs(next - u[node]));
      u[node] = next;
    }
    previous = policy;
    res.log.push_back({iter + 1, 0, 0.0, 0.0, update, static_cast<double>(changes)});
    if (update <= cfg.residual_tolerance) {
      ++iter;
      break;
    }
  }
  res.u = to_grid_function(f.grid_ptr(), u);
  res.iterations = iter;
  res.final_residual = update;
  res.converged = update <= cfg.residual_tolerance;
  if (!res.converged && res.warning.empty())
    res.warning = "iteration limit reached at update " + std::to_string(update);
  return res;
}

ResidualReport residual_report(const GridFunction& u, const GridFunction& f,
                               const SingularExponent& gamma, const Ellipticity& ell, double C) {
  const GridSpec& g = u.grid();
  const double h = g.spacing();
  ResidualReport r;
  r.tau = C * h;
  r.worst_margin = -std::numeric_limits<double>::infinity();
  const Derivatives d = fd_derivatives(u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!d.valid[i] || !(norm(d.gradient[i], g.ndim()) > h)) continue;
    ++r.checked;
    const Residuals res = singular_residual(d.gradient[i], d.hessian[i], f[i], gamma, ell);
    const double margin = std::max(res.lower, -res.upper);
    r.worst_margin = std::max(r.worst_margin, margin);
    if (margin > r.tau) {
      ++r.violations;
      if (r.locations.size() < 32) r.locations.push_back(i);
    }
  }
  if (r.checked == 0) r.worst_margin = 0.0;
  return r;
}

}  // namespace parabolab
