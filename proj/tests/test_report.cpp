#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "parabolab/catalog.hpp"
#include "parabolab/report.hpp"

using namespace parabolab;

TEST_CASE("json numbers") {
  CHECK(number(std::numeric_limits<double>::quiet_NaN()).is_null());
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(number(1.5) == 1.5);
  const auto h = report_header("decay", Json{{"seed", 7}});
  CHECK(h["schema"] == "parabolab/1");
  CHECK(h["manifest"]["seed"] == 7);
}

TEST_CASE("decimal formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1e-300) == "-1e-300");
  const double v = 0.7853981633974483;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("decay csv layout") {
  auto g = build_ball_grid(2, 33);
  const auto rep = decay_profile(make_case(parse_case("quadratic:1"), 2).sample_u(g), Direction::lower, {1.0, 2.0, 4});
  std::ostringstream os;
  write_decay_csv(os, rep);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,t_k,measure_lower,measure_upper,measure_both");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 5);
}
