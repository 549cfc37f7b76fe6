#include <doctest.h>

#include <cmath>

#include "parabolab/catalog.hpp"
#include "parabolab/density.hpp"
#include "parabolab/measure.hpp"
#include "parabolab/parallel.hpp"

using namespace parabolab;

namespace {

GridFunction normalized(const char* name, const GridPtr& g) {
  const auto tc = make_case(parse_case(name), 2);
  const auto u = tc.sample_u(g);
  return u.scaled(normalize_and_ratio(u, tc.sample_f(g), tc.gamma, 1e-12, 0.3).scaling.a);
}

}  // namespace

TEST_CASE("nonempty witness") {
  auto g = build_ball_grid(2, 65);
  const auto w = nonempty_witness(GridFunction::constant(g, 0.0), 1.0);
  CHECK(w.radius == 0.0);
  CHECK(w.in_contact);
  CHECK(w.within_half);
  // a tilted plane of size 1/16 pushes the minimizer of u + |x|^2/2 to x = -a
  const auto tilt = sample_function([](const Point& x) { return x[0] / 16.0; }, g);
  const auto wt = nonempty_witness(tilt, 1.0);
  CHECK(wt.x[0] == doctest::Approx(-1.0 / 16.0).epsilon(1e-12));
  CHECK(wt.in_contact);
  CHECK_THROWS_AS(nonempty_witness(GridFunction::constant(g, 0.1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nonempty_witness(GridFunction::constant(g, 0.0), 0.5), std::invalid_argument);
}

TEST_CASE("ball nodes") {
  auto g = build_ball_grid(2, 33);
  const Ball b{{0.3, -0.2, 0.0}, 0.37};
  const auto nodes = ball_nodes(*g, b);
  std::size_t brute = 0;
  for (std::size_t i = 0; i < g->size(); ++i) brute += g->in_ball(i) && distance(g->coords(i), b.center, 2) < b.radius;
  CHECK(nodes.size() == brute);
}

TEST_CASE("barrier profile") {
  const double A = 3.0;
  CHECK(barrier_phi(0.0, A) == doctest::Approx(std::exp(A) - 1.0));
  CHECK(barrier_phi(1.0, A) == doctest::Approx(0.0).epsilon(1e-14));
  for (double t = 0.05; t < 1.0; t += 0.05) CHECK(barrier_phi(t, A) < barrier_phi(t - 0.05, A));
}

TEST_CASE("density scan is deterministic and thread independent") {
  auto g = build_ball_grid(2, 65);
  const auto u = normalized("quadratic:1", g);
  set_thread_cap(1);
  const auto a = density_scan(u, 1.0, {2.0, 4.0}, 60, 11);
  set_thread_cap(4);
  const auto b = density_scan(u, 1.0, {2.0, 4.0}, 60, 11);
  set_thread_cap(0);
  CHECK(a.kept == b.kept);
  CHECK(a.min_ratio == b.min_ratio);
  CHECK(a.kept > 0);
  for (double r : a.min_ratio) CHECK(r > 0.0);
  CHECK_THROWS_AS(density_scan(u, 0.5, {2.0}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(u, 1.0, {1.0}, 10, 1), std::invalid_argument);
}

TEST_CASE("barrier and vertex-map probe on in-class cases") {
  auto g = build_ball_grid(2, 129);
  const Ellipticity ell(1.0, 2.0);
  for (const char* name : {"quadratic:1", "radial_plaplace:1.5"}) {
    const auto u = normalized(name, g);
    for (const Point& x0 : {Point{0, 0, 0}, Point{0.3, 0.2, 0}}) {
      const auto p = density_probe(u, 1.0, 4.0, x0, 0.25, 3.0, ell);
      CHECK(p.barrier.gap_ok);
      CHECK(p.compare.containment);
      CHECK(p.compare.det_ok);
      CHECK(p.compare.det_bound == doctest::Approx(std::pow((2.0 * 2.0 + 4.0) / 2.0, 2)));
      CHECK(p.compare.det_max <= p.compare.det_bound);
    }
  }
}
