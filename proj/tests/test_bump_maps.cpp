#include "c0dynamo/maps.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace c0dynamo;

namespace {

double dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("bump") {

TEST_CASE("plateau and tail") {
  for (BumpProfile profile : {BumpProfile::Smooth, BumpProfile::Cubic}) {
    for (double x : {0.0, 0.1, 1.0 / 3.0}) CHECK(bump_eval(profile, x) == 1.0);
    for (double x : {2.0 / 3.0, 0.8, 1.0}) CHECK(bump_eval(profile, x) == 0.0);
    // near the left junction the smooth profile rounds to 1.0 in doubles, so
    // the strict upper check starts at 0.40
    for (double x = 0.34; x < 0.66; x += 0.01) {
      double v = bump_eval(profile, x);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      if (x > 0.40) CHECK(v < 1.0);
    }
  }
}

TEST_CASE("monotone non-increasing") {
  for (BumpProfile profile : {BumpProfile::Smooth, BumpProfile::Cubic}) {
    double prev = 1.0;
    for (int i = 0; i <= 1000; ++i) {
      double v = bump_eval(profile, i / 1000.0);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("clamping vs strict") {
  BumpEval low = bump_eval_checked(BumpProfile::Smooth, -0.5, false);
  CHECK(low.value == 1.0);
  CHECK(low.clamped);
  BumpEval high = bump_eval_checked(BumpProfile::Smooth, 1.5, false);
  CHECK(high.value == 0.0);
  CHECK(high.clamped);
  BumpEval in = bump_eval_checked(BumpProfile::Smooth, 0.5, false);
  CHECK_FALSE(in.clamped);
  CHECK_THROWS_AS(bump_eval_checked(BumpProfile::Smooth, -0.5, true), std::domain_error);
  CHECK_THROWS_AS(bump_eval_checked(BumpProfile::Cubic, 1.0001, true), std::domain_error);
}

TEST_CASE("derivatives match difference quotients") {
  const double h = 1e-6;
  for (BumpProfile profile : {BumpProfile::Smooth, BumpProfile::Cubic}) {
    for (double x : {0.36, 0.45, 0.5, 0.55, 0.64}) {
      double d1 = bump_derivative(profile, x, 1);
      double fd1 = (bump_eval(profile, x + h) - bump_eval(profile, x - h)) / (2 * h);
      CHECK(d1 == doctest::Approx(fd1).epsilon(1e-4));
      double d2 = bump_derivative(profile, x, 2);
      double fd2 = (bump_eval(profile, x + h) - 2 * bump_eval(profile, x) +
                    bump_eval(profile, x - h)) /
                   (h * h);
      CHECK(d2 == doctest::Approx(fd2).epsilon(1e-2));
    }
    CHECK(bump_derivative(profile, 0.1, 1) == 0.0);
    CHECK(bump_derivative(profile, 0.9, 1) == 0.0);
    CHECK_THROWS_AS(bump_derivative(profile, 0.5, 3), std::invalid_argument);
  }
}

TEST_CASE("smooth profile is flat at the junctions") {
  // approaching 1/3 and 2/3, both derivatives fade out (Cubic does not: its
  // first derivative jumps at the junctions)
  for (int order : {1, 2}) {
    CHECK(std::abs(bump_derivative(BumpProfile::Smooth, 1.0 / 3 + 1e-4, order)) < 1e-2);
    CHECK(std::abs(bump_derivative(BumpProfile::Smooth, 2.0 / 3 - 1e-4, order)) < 1e-2);
  }
}

}  // TEST_SUITE

TEST_SUITE("twist") {

TEST_CASE("identity outside the support, bit-exact") {
  TwistMap map{{0.5, 0.5, 0.5}, 0.1, 0.25, BumpProfile::Smooth};
  // support is the open ball of radius (2/3)*0.1
  for (const Point& p : {Point{0.5 + 0.067, 0.5, 0.5}, Point{0.9, 0.9, 0.9},
                         Point{0.5, 0.5 + 2.0 / 30.0, 0.5}}) {
    Point q = twist_apply(map, p);
    CHECK(q == p);
    Point r = twist_inverse(map, p);
    CHECK(r == p);
  }
}

TEST_CASE("rotates by the full angle on the inner plateau") {
  TwistMap map{{0.5, 0.5, 0.5}, 0.3, 0.125, BumpProfile::Smooth};
  // rho/r = 0.2 < 1/3: bump = 1, so the rotation angle is 2*pi/8 exactly
  Point p{0.5, 0.5 + 0.06, 0.5};
  Point q = twist_apply(map, p);
  const double c = std::cos(2 * M_PI * 0.125), s = std::sin(2 * M_PI * 0.125);
  CHECK(q[0] == 0.5);
  CHECK(q[1] == doctest::Approx(0.5 + 0.06 * c).epsilon(1e-14));
  CHECK(q[2] == doctest::Approx(0.5 + 0.06 * s).epsilon(1e-14));
}

TEST_CASE("first d-2 coordinates never move") {
  TwistMap map{{0.3, 0.5, 0.5, 0.5}, 0.1, 0.25, BumpProfile::Smooth};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> off(-0.05, 0.05);
  for (int i = 0; i < 200; ++i) {
    Point p{0.3 + off(rng), 0.5 + off(rng), 0.5 + off(rng), 0.5 + off(rng)};
    Point q = twist_apply(map, p);
    CHECK(q[0] == p[0]);
    CHECK(q[1] == p[1]);
  }
}

TEST_CASE("preserves distance to the center") {
  TwistMap map{{0.5, 0.5}, 0.2, 0.5, BumpProfile::Smooth};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> off(-0.15, 0.15);
  for (int i = 0; i < 2000; ++i) {
    Point p{0.5 + off(rng), 0.5 + off(rng)};
    Point q = twist_apply(map, p);
    CHECK(dist(q, map.center) == doctest::Approx(dist(p, map.center)).epsilon(1e-13));
  }
}

TEST_CASE("inverse undoes the twist") {
  for (BumpProfile profile : {BumpProfile::Smooth, BumpProfile::Cubic}) {
    TwistMap map{{0.4, 0.5, 0.6}, 0.15, 0.0625, profile};
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> off(-0.12, 0.12);
    double worst = 0;
    for (int i = 0; i < 5000; ++i) {
      Point p{0.4 + off(rng), 0.5 + off(rng), 0.6 + off(rng)};
      Point q = twist_inverse(map, twist_apply(map, p));
      worst = std::max(worst, dist(p, q));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("kernel reports support membership") {
  Point center{0.5, 0.5};
  Point outside{0.5 + 0.14, 0.5};
  Point before = outside;
  CHECK_FALSE(twist_kernel(outside, center, 0.2, 0.25, BumpProfile::Smooth));
  CHECK(outside == before);
  Point inside{0.5 + 0.05, 0.5};
  CHECK(twist_kernel(inside, center, 0.2, 0.25, BumpProfile::Smooth));
}

}  // TEST_SUITE

TEST_SUITE("transport") {

namespace {

TransportMap make_map() {
  // translate D((.5,.4), .05) up by 0.1 inside the box [.4,.6] x [.3,.6]
  return TransportMap({0.4, 0.3}, {0.6, 0.6}, {0.5, 0.4}, {0.5, 0.5}, 0.05, 0.025);
}

}  // namespace

TEST_CASE("pure translation on the ball") {
  TransportMap map = make_map();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double dx = off(rng) * 0.05, dy = off(rng) * 0.05;
    if (dx * dx + dy * dy > 0.05 * 0.05) continue;
    Point p{0.5 + dx, 0.4 + dy};
    Point q = transport_apply(map, p);
    CHECK(q[0] == p[0]);
    CHECK(q[1] == doctest::Approx(p[1] + 0.1).epsilon(1e-15));
  }
}

TEST_CASE("identity outside the box and on its boundary, bit-exact") {
  TransportMap map = make_map();
  for (const Point& p :
       {Point{0.39, 0.45}, Point{0.61, 0.45}, Point{0.5, 0.29}, Point{0.5, 0.61},
        Point{0.4, 0.45}, Point{0.6, 0.45}, Point{0.5, 0.3}, Point{0.5, 0.6},
        Point{0.1, 0.9}}) {
    CHECK(transport_apply(map, p) == p);
    CHECK(transport_inverse(map, p) == p);
  }
}

TEST_CASE("identity beyond the taper ring") {
  TransportMap map = make_map();
  // lateral clearance radius + margin = 0.075: at |x1 - 0.5| >= 0.075 the
  // fiber is untouched even inside the box
  for (double x : {0.5 + 0.076, 0.5 - 0.076, 0.5 + 0.09}) {
    Point p{x, 0.45};
    CHECK(transport_apply(map, p) == p);
  }
}

TEST_CASE("fibers are strictly monotone") {
  TransportMap map = make_map();
  for (double x : {0.5, 0.51, 0.46, 0.44, 0.56, 0.57}) {
    double prev = -1;
    for (int i = 0; i <= 300; ++i) {
      double y = 0.3 + 0.3 * i / 300.0;
      Point q = transport_apply(map, {x, y});
      if (i > 0) CHECK(q[1] > prev);
      prev = q[1];
    }
  }
}

TEST_CASE("inverse undoes the transport") {
  TransportMap map = make_map();
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ux(0.4, 0.6), uy(0.3, 0.6);
  double worst = 0;
  for (int i = 0; i < 5000; ++i) {
    Point p{ux(rng), uy(rng)};
    Point q = transport_inverse(map, transport_apply(map, p));
    worst = std::max(worst, dist(p, q));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("works along any intermediate fiber in d = 3") {
  TransportMap map({0.4, 0.4, 0.3}, {0.6, 0.6, 0.6}, {0.5, 0.5, 0.4}, {0.5, 0.5, 0.5}, 0.05,
                   0.025);
  Point p{0.5, 0.5, 0.4};
  Point q = transport_apply(map, p);
  CHECK(q[2] == doctest::Approx(0.5).epsilon(1e-15));
  Point back = transport_inverse(map, q);
  CHECK(dist(back, p) < 1e-13);
}

TEST_CASE("rejects geometry that cannot hold the translated chord") {
  // target ball leaves the box: box top at 0.5 but target chord reaches 0.55
  CHECK_THROWS_AS(TransportMap({0.4, 0.3}, {0.6, 0.5}, {0.5, 0.4}, {0.5, 0.5}, 0.05, 0.025),
                  std::invalid_argument);
  // source and target differ before the last coordinate
  CHECK_THROWS_AS(TransportMap({0.4, 0.3}, {0.6, 0.6}, {0.45, 0.4}, {0.5, 0.5}, 0.05, 0.025),
                  std::invalid_argument);
  // nonpositive radius
  CHECK_THROWS_AS(TransportMap({0.4, 0.3}, {0.6, 0.6}, {0.5, 0.4}, {0.5, 0.5}, 0.0, 0.025),
                  std::invalid_argument);
}

}  // TEST_SUITE
