#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "parabolab/grid.hpp"
#include "parabolab/grid_io.hpp"

using namespace parabolab;

TEST_CASE("ball grid basics") {
  auto g1 = build_ball_grid(1, 201);
  CHECK(g1->spacing() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(g1->mask_count() == 201);

  auto g3 = build_ball_grid(2, 3);
  CHECK(g3->mask_count() == 5);

  auto g = build_ball_grid(2, 129);
  CHECK(std::abs(ball_measure(*g) - std::numbers::pi) / std::numbers::pi < 0.02);

  CHECK_THROWS_AS(build_ball_grid(2, 64), std::invalid_argument);
  CHECK_THROWS_AS(build_ball_grid(4, 9), std::invalid_argument);
  CHECK_THROWS_AS(build_ball_grid(0, 9), std::invalid_argument);
}

TEST_CASE("refinement halves the spacing exactly") {
  for (int m : {9, 17, 33, 65}) {
    auto a = build_ball_grid(2, m);
    auto b = build_ball_grid(2, 2 * m - 1);
    CHECK(b->spacing() == a->spacing() / 2.0);
  }
}

TEST_CASE("origin is a node") {
  auto g = build_ball_grid(3, 17);
  auto idx = g->nearest_node(Point{0, 0, 0});
  REQUIRE(idx);
  const Point x = g->coords(*idx);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 0.0);
}

TEST_CASE("sampling") {
  auto g = build_ball_grid(1, 201);
  auto u = sample_function([](const Point& x) { return 0.5 * x[0] * x[0]; }, g);
  CHECK(u[150] == doctest::Approx(0.125).epsilon(1e-14));

  auto g2 = build_ball_grid(2, 65);
  auto c = sample_function([](const Point& x) { return norm(x, 2); }, g2);
  const auto node = g2->nearest_node(Point{1, 0, 0});
  CHECK(c[*node] == 1.0);

  auto z = sample_function([](const Point&) { return 0.0; }, g2);
  CHECK(z.sup_norm() == 0.0);
  for (std::size_t i = 0; i < g2->size(); ++i)
    if (!g2->in_ball(i)) CHECK(std::isnan(z[i]));

  CHECK_THROWS_AS(
      sample_function([](const Point&) { return std::numeric_limits<double>::infinity(); }, g2),
      std::invalid_argument);
}

TEST_CASE("finite differences exact on quadratics") {
  auto g = build_ball_grid(2, 33);
  auto u = sample_function([](const Point& x) { return 0.3 * x[0] * x[0] - 0.7 * x[0] * x[1] + 1.1 * x[1] * x[1] + 0.2 * x[0] - x[1] + 5; }, g);
  const auto d = fd_derivatives(u);
  std::size_t valid = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!d.valid[i]) continue;
    ++valid;
    const Point x = g->coords(i);
    CHECK(std::abs(d.hessian[i](0, 0) - 0.6) < 1e-10);
    CHECK(std::abs(d.hessian[i](0, 1) + 0.7) < 1e-10);
    CHECK(std::abs(d.hessian[i](1, 1) - 2.2) < 1e-10);
    CHECK(std::abs(d.gradient[i][0] - (0.6 * x[0] - 0.7 * x[1] + 0.2)) < 1e-10);
    CHECK(std::abs(d.gradient[i][1] - (-0.7 * x[0] + 2.2 * x[1] - 1)) < 1e-10);
    CHECK_FALSE(g->on_ring(i));
  }
  CHECK(valid > 0);
}

TEST_CASE("finite differences on sin are second order") {
  auto g = build_ball_grid(2, 129);  // h = 1/64
  const double h = g->spacing();
  auto u = sample_function([](const Point& x) { return std::sin(x[0]); }, g);
  const auto d = fd_derivatives(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!d.valid[i]) continue;
    const Point x = g->coords(i);
    worst = std::max(worst, std::abs(d.hessian[i](0, 0) + std::sin(x[0])));
    worst = std::max(worst, std::abs(d.hessian[i](0, 1)));
    worst = std::max(worst, std::abs(d.hessian[i](1, 1)));
  }
  CHECK(worst <= h * h);
}

TEST_CASE("measures and norms") {
  auto g = build_ball_grid(2, 129);
  CHECK(measure(CellSet::empty(g)) == 0.0);
  CHECK(std::abs(measure(CellSet::full(g)) - std::numbers::pi) / std::numbers::pi < 0.02);
  auto c = GridFunction::constant(g, 2.5);
  CHECK(lp_norm(c, 1.0) == doctest::Approx(2.5 * ball_measure(*g)).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(c.negated(), 1.0), std::invalid_argument);

  // additivity and monotonicity
  std::vector<std::uint8_t> a(g->size(), 0), b(g->size(), 0);
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!g->in_ball(i)) continue;
    if (g->coords(i)[0] < 0) a[i] = 1;
    else if (g->coords(i)[1] < 0.3) b[i] = 1;
  }
  CellSet A(g, a), B(g, b);
  CHECK(measure(A | B) == measure(A) + measure(B));
  CHECK(measure(A) <= measure(A | B));
  CHECK((A & B).is_empty());
  CHECK(A.subset_of(A | B));
  CHECK_THROWS_AS(CellSet(g, std::vector<std::uint8_t>(g->size(), 1)), std::invalid_argument);
}

TEST_CASE("GF01 round trip") {
  auto g = build_ball_grid(2, 17);
  auto u = sample_function([](const Point& x) { return x[0] - 2 * x[1] * x[1]; }, g);
  std::stringstream ss;
  write_gf01(ss, u);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 4) == "GF01");
  CHECK(bytes.size() == 4 + 4 + 4 + 8 + 8 * g->size());
  auto v = read_gf01(ss);
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (g->in_ball(i)) CHECK(v[i] == u[i]);
    else CHECK(std::isnan(v[i]));
  }

  std::stringstream bad("GF02xxxxxxxxxxxxxxxx");
  CHECK_THROWS(read_gf01(bad));
}
