#include <doctest.h>

#include <cmath>
#include <random>

#include "parabolab/covering.hpp"

using namespace parabolab;

TEST_CASE("largest ball examples") {
  auto g = build_ball_grid(2, 129);
  const double h = g->spacing();
  const auto full = CellSet::full(g);
  const auto b = largest_ball(Point{0.3, -0.4, 0}, {full, false});
  CHECK(b.radius == doctest::Approx(1.0));
  CHECK(norm(b.center, 2) <= h);

  auto holed = full.members();
  holed[*g->nearest_node(Point{0, 0, 0})] = 0;
  const auto bh = largest_ball(Point{0.4, 0, 0}, {CellSet(g, holed), false});
  CHECK(distance(bh.center, Point{0.5, 0, 0}, 2) <= h);
  CHECK(std::abs(bh.radius - 0.5) <= h);

  const Point x{0.25, 0.125, 0};
  const auto small = raster_union(g, {Ball{x, 0.2}}, false);
  const auto bs = largest_ball(x, {small, false});
  CHECK(distance(bs.center, x, 2) <= h);
  CHECK(std::abs(bs.radius - 0.2) <= h);

  CHECK_THROWS_AS(largest_ball(Point{0.9, 0, 0}, {small, false}), std::invalid_argument);
}

TEST_CASE("largest ball radius grows with the set") {
  auto g = build_ball_grid(2, 65);
  const Point x{0.1, 0.1, 0};
  const auto small = raster_union(g, {Ball{x, 0.2}}, false);
  const auto big = raster_union(g, {Ball{x, 0.2}, Ball{{0.3, 0.2, 0}, 0.3}}, false);
  CHECK(largest_ball(x, {small, false}).radius <= largest_ball(x, {big, false}).radius);
}

TEST_CASE("vitali selection") {
  const Ball one{{0.1, 0.2, 0}, 0.3};
  CHECK(vitali_select({one}) == std::vector<std::size_t>{0});
  CHECK(vitali_select({one, one}).size() == 1);
  CHECK_THROWS_AS(vitali_select({}), std::invalid_argument);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> C(-0.8, 0.8), R(0.02, 0.3);
  std::vector<Ball> fam(100);
  for (auto& b : fam) b = Ball{{C(rng), C(rng), 0}, R(rng)};
  const auto kept = vitali_select(fam);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) CHECK(balls_disjoint(fam[kept[i]], fam[kept[j]], 2));
  // raster check of the 5-dilation cover, written out independently
  auto g = build_ball_grid(2, 129);
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!g->in_ball(i)) continue;
    const Point x = g->coords(i);
    bool in = false, cov = false;
    for (const auto& b : fam) in = in || distance(x, b.center, 2) < b.radius;
    for (auto k : kept) cov = cov || distance(x, fam[k].center, 2) < 5.0 * fam[k].radius;
    uncovered += in && !cov;
  }
  CHECK(uncovered == 0);
  CHECK(vitali_covers(*g, fam, kept));
}

TEST_CASE("covering check examples") {
  auto g = build_ball_grid(2, 129);
  const auto full = CellSet::full(g);
  const auto E0 = raster_union(g, {Ball{{0.2, 0.1, 0}, 0.1}});
  const auto v0 = covering_check({E0, true}, {full, true}, 0.5, 100, 1);
  CHECK(v0.hypothesis_ok);
  CHECK(v0.conclusion_ok);
  CHECK(v0.lhs == 0.0);

  const double rho = 0.3;
  const auto origin = raster_union(g, {Ball{{0, 0, 0}, 0.0}});
  REQUIRE(origin.count() == 1);
  const auto F = raster_union(g, {Ball{{0, 0, 0}, rho}});
  const auto v1 = covering_check({origin, true}, {F, true}, rho * rho / 4.0, 300, 2);
  CHECK(v1.hypothesis_ok);
  CHECK(v1.conclusion_ok);

  const auto half = raster_union(g, {Ball{{0, 0, 0}, 0.5}});
  const auto v2 = covering_check({half, true}, {half, true}, 0.4, 300, 3);
  CHECK_FALSE(v2.hypothesis_ok);
  CHECK_FALSE(v2.conclusion_checked);
  CHECK(v2.worst_ratio < 0.4);

  CHECK_THROWS_AS(covering_check({CellSet::empty(g), true}, {full, true}, 0.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(covering_check({half, true}, {E0, true}, 0.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(covering_check({E0, true}, {full, true}, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("random instances satisfy the conclusion when the hypothesis holds") {
  auto g = build_ball_grid(2, 65);
  int passed = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto inst = random_covering_instance(g, s);
    if (!inst) continue;
    REQUIRE(inst->E.cells.subset_of(inst->F.cells));
    const auto v = covering_check(inst->E, inst->F, inst->mu, 100, s);
    if (!v.hypothesis_ok) continue;
    ++passed;
    CHECK(v.conclusion_ok);
  }
  CHECK(passed > 10);
}
