#include <doctest.h>

#include <cmath>
#include <numbers>

#include "parabolab/catalog.hpp"
#include "parabolab/solver.hpp"

using namespace parabolab;

namespace {

double max_error(const GridFunction& u, const std::function<double(const Point&)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.grid().size(); ++i)
    if (u.grid().in_ball(i)) e = std::max(e, std::abs(u[i] - exact(u.grid().coords(i))));
  return e;
}

const double kq = std::numbers::pi / 2.0;
double wave(const Point& x) { return std::cos(kq * x[0]) * std::cos(kq * x[1]); }

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.eps_schedule = {1e-4, 1e-2};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.eps_schedule = {1e-2, 1e-9};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  auto g = build_ball_grid(2, 17);
  CHECK_THROWS_AS(solve_plaplace(GridFunction::constant(g, 1.0), wave, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(solve_plaplace(GridFunction::constant(g, 1.0), wave, 1.0), std::invalid_argument);
}

TEST_CASE("p = 2 reproduces quadratics exactly") {
  const auto tc = make_case(parse_case("radial_plaplace:2"), 2);
  for (int m : {17, 33}) {
    auto g = build_ball_grid(2, m);
    const auto s = solve_plaplace(tc.sample_f(g), tc.u, 2.0);
    CHECK(s.converged);
    CHECK(max_error(s.u, tc.u) < 1e-11);
  }
}

TEST_CASE("poisson error is second order") {
  std::vector<double> errs;
  for (int m : {33, 65}) {
    auto g = build_ball_grid(2, m);
    const double h = g->spacing();
    const auto f = sample_function([](const Point& x) { return -2.0 * kq * kq * wave(x); }, g);
    const auto s = solve_plaplace(f, wave, 2.0);
    errs.push_back(max_error(s.u, wave));
    CHECK(errs.back() <= 2.0 * h * h);
    CHECK(residual_report(s.u, f, SingularExponent(0.0), Ellipticity(1.0, 1.0)).violations == 0);
  }
  CHECK(errs[0] / errs[1] > 3.0);
}

TEST_CASE("radial p-laplace converges under refinement") {
  for (double p : {1.5, 1.8}) {
    const auto tc = make_case(parse_case("radial_plaplace:" + std::to_string(p)), 2);
    std::vector<double> errs;
    for (int m : {33, 65}) {
      auto g = build_ball_grid(2, m);
      const auto f = tc.sample_f(g);
      const auto s = solve_plaplace(f, tc.u, p);
      CHECK(s.converged);
      errs.push_back(max_error(s.u, tc.u));
      CHECK(residual_report(s.u, f, tc.gamma, tc.ell).violations == 0);
    }
    CHECK(errs[0] >= 1.5 * errs[1]);
  }
}

TEST_CASE("discrete energy is minimized by the solution") {
  auto g = build_ball_grid(2, 17);
  const auto tc = make_case(parse_case("radial_plaplace:1.5"), 2);
  const auto f = tc.sample_f(g);
  const auto s = solve_plaplace(f, tc.u, 1.5);
  std::vector<double> box(g->size()), fb(g->size(), 0.0);
  for (std::size_t i = 0; i < g->size(); ++i) {
    box[i] = g->in_ball(i) ? s.u[i] : tc.u(g->coords(i));
    if (g->in_ball(i)) fb[i] = f[i];
  }
  const double E0 = plaplace_energy(*g, box, fb, 1.5, 1e-8);
  for (std::size_t i = 0; i < g->size(); i += 7) {
    if (!g->in_ball(i) || g->on_ring(i)) continue;
    for (double d : {-1e-3, 1e-3}) {
      auto b = box;
      b[i] += d;
      CHECK(plaplace_energy(*g, b, fb, 1.5, 1e-8) > E0);
    }
  }
}

TEST_CASE("pucci solver") {
  const Ellipticity ell(1.0, 2.0);
  auto g = build_ball_grid(2, 33);
  // quadratic data is reproduced exactly: P-(I) = 2 lambda
  const auto quad = [](const Point& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); };
  const auto s = solve_pucci(GridFunction::constant(g, 2.0), quad, PucciSign::minus, ell);
  CHECK(s.converged);
  CHECK(max_error(s.u, quad) < 1e-12);
  std::vector<double> box(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) box[i] = quad(g->coords(i));
  const std::size_t center = *g->nearest_node(Point{0, 0, 0});
  CHECK(pucci_discrete(*g, box, center, PucciSign::minus, ell) == doctest::Approx(2.0));
  CHECK(pucci_discrete(*g, box, center, PucciSign::plus, ell) == doctest::Approx(4.0));
  // smooth case converges at second order
  std::vector<double> errs;
  for (int m : {33, 65}) {
    auto gg = build_ball_grid(2, m);
    const auto f = sample_function(
        [&](const Point& x) {
          SymMatrix H(2);
          H.set(0, 0, -kq * kq * wave(x));
          H.set(1, 1, -kq * kq * wave(x));
          H.set(0, 1, kq * kq * std::sin(kq * x[0]) * std::sin(kq * x[1]));
          return pucci_minus(H, ell);
        },
        gg);
    const auto r = solve_pucci(f, wave, PucciSign::minus, ell);
    CHECK(r.converged);
    errs.push_back(max_error(r.u, wave));
    CHECK(residual_report(r.u, f, SingularExponent(0.0), ell).violations == 0);
  }
  CHECK(errs[0] / errs[1] > 3.0);
  CHECK_THROWS_AS(solve_pucci(GridFunction::constant(build_ball_grid(3, 9), 1.0), quad, PucciSign::minus, ell),
                  std::invalid_argument);
}

TEST_CASE("residual report flags a wrong solution") {
  auto g = build_ball_grid(2, 65);
  const auto tc = make_case(parse_case("bump"), 2);
  const auto f = tc.sample_f(g);
  CHECK(residual_report(tc.sample_u(g), f, tc.gamma, tc.ell).violations == 0);
  const auto wrong = tc.sample_u(g).scaled(3.0);
  const auto r = residual_report(wrong, f, tc.gamma, tc.ell);
  CHECK(r.violations > 0);
  CHECK(!r.locations.empty());
  CHECK(r.worst_margin > r.tau);
}
