// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tbridge/geo/heightfield.hpp"
#include "tbridge/geo/mapper.hpp"

using namespace tbridge;
using namespace tbridge::geo;

namespace {
constexpr double kDeg = 180.0 / std::numbers::pi;

double signed_area(Vec2 a, Vec2 b, Vec2 c) { return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y); }

// bilinear formula written out independently of the implementation
double bilinear(double z00, double z10, double z01, double z11, double fx, double fy) {
  return z00 * (1 - fx) * (1 - fy) + z10 * fx * (1 - fy) + z01 * (1 - fx) * fy + z11 * fx * fy;
}
}  // namespace

TEST_CASE("to_engine") {
  CoordinateMapper m{1000, 2000};
  CHECK(m.to_engine({1000, 2000}) == Vec2{0, 0});
  CHECK(m.to_engine({1010, 2005}) == Vec2{10, -5});

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-1e5, 1e5);
  std::uniform_real_distribution<double> scale(0.01, 100);
  for (int i = 0; i < 2000; ++i) {
    CoordinateMapper mm{coord(rng), coord(rng), scale(rng)};
    Vec2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
    Vec2 back = mm.from_engine(mm.to_engine(a));
    CHECK(std::abs(back.x - a.x) < 1e-9 * std::max(1.0, std::abs(a.x)));
    CHECK(std::abs(back.y - a.y) < 1e-9 * std::max(1.0, std::abs(a.y)));
    const double d = distance(a, b);
    CHECK(distance(mm.to_engine(a), mm.to_engine(b)) == doctest::Approx(mm.units_per_meter * d).epsilon(1e-9));
    const double before = signed_area(a, b, c);
    const double after = signed_area(mm.to_engine(a), mm.to_engine(b), mm.to_engine(c));
    if (std::abs(before) > 1e-3) CHECK((before > 0) != (after > 0));
  }
  CHECK_THROWS_AS((CoordinateMapper{0, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CoordinateMapper{0, 0, -1}.validate()), std::invalid_argument);
}

TEST_CASE("to_engine_yaw") {
  CoordinateMapper m;
  CHECK(m.to_engine_yaw(90) == 0);
  CHECK(m.to_engine_yaw(450) == m.to_engine_yaw(90));
  CHECK(m.to_engine_yaw(0) == 270);
  CHECK(m.to_engine_yaw(-30) == 240);
  for (double a = -720; a < 720; a += 7.5) {
    const double y = m.to_engine_yaw(a);
    CHECK(y >= 0);
    CHECK(y < 360);
  }
}

TEST_CASE("engine yaw agrees with the engine-space displacement") {
  // A vehicle heading `angle` (clockwise from north) moves by (sin, cos) in the
  // simulation plane. Its mapped yaw must point along the mapped displacement.
  for (bool flip : {false, true}) {
    CoordinateMapper m{50, -20, 2.5, 90, flip};
    for (double angle = 0; angle < 360; angle += 3.7) {
      const double r = angle / kDeg;
      Vec2 p0{123.0, 456.0};
      Vec2 p1{p0.x + std::sin(r), p0.y + std::cos(r)};
      Vec2 d = m.to_engine(p1) - m.to_engine(p0);
      const double yaw = m.to_engine_yaw(angle);
      CHECK(std::abs(angle_difference(m.heading_of(d), yaw)) < 1e-9);
      Vec2 f = m.forward(yaw);
      CHECK(f.x * d.x + f.y * d.y == doctest::Approx(length(d)));
    }
  }
}

TEST_CASE("angle helpers") {
  CHECK(normalize_degrees(360) == 0);
  CHECK(normalize_degrees(-90) == 270);
  CHECK(normalize_degrees(725) == doctest::Approx(5));
  CHECK(angle_difference(350, 10) == doctest::Approx(20));
  CHECK(angle_difference(10, 350) == doctest::Approx(-20));
  CHECK(angle_difference(0, 180) == 180);
  CHECK(lerp_angle(350, 10, 0.5) == doctest::Approx(0).epsilon(1e-12));
  CHECK(lerp_angle(350, 10, 0.25) == doctest::Approx(355));
  CHECK(lerp_angle(10, 350, 1.0) == 350);
  CHECK(lerp_angle(10, 350, 0.0) == 10);
}

TEST_CASE("snap_height") {
  auto flat = HeightField::flat(0.0);
  CHECK(snap_height(flat, 123, -456).elevation == 0.0);
  CHECK_FALSE(snap_height(flat, 1e9, 1e9).out_of_bounds);

  // 3x3 grid, cell 10, origin (0,0)
  std::vector<double> z = {412.5, 400, 390,  //
                           405, 398, 380,    //
                           401, 395, 370};
  auto g = HeightField::grid({0, 0}, 10, 3, 3, z);
  CHECK(snap_height(g, 0, 0).elevation == 412.5);
  CHECK(snap_height(g, 10, 10).elevation == 398);
  CHECK(snap_height(g, 20, 20).elevation == 370);
  CHECK(snap_height(g, 5, 5).elevation == doctest::Approx((412.5 + 400 + 405 + 398) / 4.0));
  CHECK(snap_height(g, 15, 5).elevation == doctest::Approx((400 + 390 + 398 + 380) / 4.0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 20);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng);
    const int c = std::min(1, static_cast<int>(x / 10)), r = std::min(1, static_cast<int>(y / 10));
    const double fx = x / 10 - c, fy = y / 10 - r;
    auto at = [&](int rr, int cc) { return z[static_cast<std::size_t>(rr * 3 + cc)]; };
    const double expect = bilinear(at(r, c), at(r, c + 1), at(r + 1, c), at(r + 1, c + 1), fx, fy);
    const double got = snap_height(g, x, y).elevation;
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    const double lo = std::min({at(r, c), at(r, c + 1), at(r + 1, c), at(r + 1, c + 1)});
    const double hi = std::max({at(r, c), at(r, c + 1), at(r + 1, c), at(r + 1, c + 1)});
    CHECK(got >= lo - 1e-9);
    CHECK(got <= hi + 1e-9);
  }

  g.fallback = -1;
  auto out = snap_height(g, 25, 5);
  CHECK(out.out_of_bounds);
  CHECK(out.elevation == -1);
  auto below = snap_height(g, 5, 5, 100.0);  // terrain above the probe
  CHECK(below.out_of_bounds);

  CHECK_THROWS_AS(HeightField::grid({0, 0}, 0, 2, 2, {0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(HeightField::grid({0, 0}, 1, 1, 2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(HeightField::grid({0, 0}, 1, 2, 2, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(HeightField::grid({0, 0}, 1, 2, 2, {0, 0, NAN, 0}), std::invalid_argument);
}

TEST_CASE("heightfield text format") {
  std::istringstream in(R"(# ramp
-10 -10 5 2 3
0 1 2   # row 0
3 4 5
)");
  auto g = HeightField::parse(in);
  CHECK(g.contains(0, -5));
  CHECK(snap_height(g, -10, -10).elevation == 0);
  CHECK(snap_height(g, 0, -5).elevation == 5);
  CHECK(snap_height(g, -5, -7.5).elevation == doctest::Approx(2.5));  // halfway between 1 and 4
  std::istringstream bad("0 0 1 2 2\n1 2 3");
  CHECK_THROWS_AS(HeightField::parse(bad), std::runtime_error);
}

TEST_CASE("snap_pitch") {
  auto flat = HeightField::flat(3.0);
  CHECK(snap_pitch(flat, {0, 0}, 37, 2.7).pitch_degrees == 0);

  // plane z = s * x over a large grid
  for (double s : {0.0, 0.05, -0.2, 1.0}) {
    std::vector<double> z;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) z.push_back(s * c * 100.0);
    auto g = HeightField::grid({0, 0}, 100, 5, 5, z);
    CHECK(snap_pitch(g, {200, 200}, 0, 2.7).pitch_degrees == doctest::Approx(std::atan(s) * kDeg));
    CHECK(snap_pitch(g, {200, 200}, 180, 2.7).pitch_degrees == doctest::Approx(-std::atan(s) * kDeg));
    CHECK(snap_pitch(g, {200, 200}, 90, 2.7).pitch_degrees == doctest::Approx(0).epsilon(1e-9));
  }

  // height difference equal to the wheelbase -> 45 degrees
  auto step = HeightField::grid({0, 0}, 2.0, 2, 2, {0, 2, 0, 2});
  CHECK(snap_pitch(step, {1, 1}, 0, 2.0).pitch_degrees == doctest::Approx(45));

  auto g = HeightField::grid({0, 0}, 10, 2, 2, {0, 1, 2, 3});
  for (double yaw = 0; yaw < 360; yaw += 15) {
    auto a = snap_pitch(g, {5, 5}, yaw, 2.0);
    auto b = snap_pitch(g, {5, 5}, yaw + 180, 2.0);
    CHECK(a.pitch_degrees == doctest::Approx(-b.pitch_degrees).epsilon(1e-9));
  }
  auto edge = snap_pitch(g, {0.5, 5}, 180, 2.0);
  CHECK(edge.out_of_bounds);
  CHECK(edge.pitch_degrees == 0);
  CHECK_THROWS_AS(snap_pitch(g, {5, 5}, 0, 0.0), std::invalid_argument);
}
