#include "c0dynamo/system.hpp"

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

AssembledSystem make_system() {
  LayoutParams params;
  return assemble(SequenceSpec::periodic_tail({Rat(37, 100)}, {Rat(1, 2), Rat(3, 8)}), params);
}

}  // namespace

TEST_SUITE("system") {

TEST_CASE("turn counts halve per strip") {
  AssembledSystem system = make_system();
  for (std::int64_t n = 1; n <= 20; ++n)
    CHECK(system.turns(n) == std::ldexp(1.0, -int(n + 1)));
  CHECK(system.turns(5000) == 0.0);
  AssembledSystem inv = system.inverted();
  CHECK(inv.turns(3) == -system.turns(3));
}

TEST_CASE("strip twists follow the layout") {
  AssembledSystem system = make_system();
  CHECK_FALSE(system.strip_twist(1).has_value());
  auto twist = system.strip_twist(2);
  REQUIRE(twist.has_value());
  auto disk = layout_numeric(system.params(), system.spec(), 2);
  CHECK(twist->center == disk->center);
  CHECK(twist->radius == disk->radius);
  CHECK(twist->turns == system.turns(2));
}

TEST_CASE("identity away from the disks, bit-exact") {
  AssembledSystem system = make_system();
  for (const Point& p : {Point{0.0, 0.3}, Point{0.0, 0.9}, Point{1.0, 0.99},
                         Point{0.45, 0.9}, Point{0.45, 0.1}, Point{0.7, 0.7}}) {
    CHECK(system.eval(p) == p);
    CHECK(system.eval_inverse(p) == p);
  }
}

TEST_CASE("disk centers are fixed points") {
  AssembledSystem system = make_system();
  for (std::int64_t n = 2; n <= 9; ++n) {
    auto disk = layout_numeric(system.params(), system.spec(), n);
    REQUIRE(disk.has_value());
    CHECK(system.eval(disk->center) == disk->center);
  }
}

TEST_CASE("probe near a disk center returns with period 2^(n+1)") {
  AssembledSystem system = make_system();
  for (std::int64_t n : {2, 3, 4}) {
    auto disk = layout_numeric(system.params(), system.spec(), n);
    Point start = disk->center;
    start.back() += disk->radius / 6.0;
    const std::int64_t period = std::int64_t(1) << (n + 1);
    Point p = start;
    for (std::int64_t k = 1; k <= period; ++k) {
      p = system.eval(p);
      if (k < period) CHECK(dist(p, start) > 1e-3 * disk->radius);
    }
    CHECK(dist(p, start) < 1e-9);
  }
}

TEST_CASE("iterate handles negative counts") {
  AssembledSystem system = make_system();
  Point p{0.415, 0.4};
  Point q = system.iterate(p, 5);
  CHECK(dist(system.iterate(q, -5), p) < 1e-12);
  CHECK(system.iterate(p, 0) == p);
}

TEST_CASE("inverse composes to the identity") {
  AssembledSystem system = make_system();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 20000; ++i) {
    Point p{u(rng), u(rng)};
    worst = std::max(worst, dist(system.eval_inverse(system.eval(p)), p));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("inverted system is the pointwise inverse") {
  AssembledSystem system = make_system();
  AssembledSystem inv = system.inverted();
  Point p{0.41, 0.45};
  CHECK(dist(inv.eval(p), system.eval_inverse(p)) == 0.0);
}

TEST_CASE("rejects points outside the cube or of wrong dimension") {
  AssembledSystem system = make_system();
  CHECK_THROWS_AS(system.eval({1.2, 0.5}), std::domain_error);
  CHECK_THROWS_AS(system.eval({-0.1, 0.5}), std::domain_error);
  CHECK_THROWS_AS(system.eval({0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("face x1 = 0 is pointwise fixed") {
  AssembledSystem system = make_system();
  for (double y : {0.0, 0.25, 0.37, 0.5, 1.0}) {
    Point p{0.0, y};
    CHECK(system.eval(p) == p);
  }
}

TEST_CASE("three dimensional systems twist the last two coordinates") {
  LayoutParams params;
  params.dimension = 3;
  AssembledSystem system =
      assemble(SequenceSpec::eventually_constant({}, Rat(2, 5)), params, BumpProfile::Smooth);
  auto disk = layout_numeric(params, system.spec(), 2);
  REQUIRE(disk.has_value());
  Point p = disk->center;
  p[2] += disk->radius / 6.0;
  Point q = system.eval(p);
  CHECK(q[0] == p[0]);  // x1 untouched in d = 3
  CHECK(dist(q, disk->center) == doctest::Approx(dist(p, disk->center)).epsilon(1e-13));
  double worst = 0;
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    Point x{u(rng), u(rng), u(rng)};
    worst = std::max(worst, dist(system.eval_inverse(system.eval(x)), x));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("opaque specs assemble through the numeric layout") {
  LayoutParams params;
  auto spec = SequenceSpec::opaque([](std::int64_t j) { return 0.3 + 0.01 * double(j % 5); });
  AssembledSystem system = assemble(spec, params);
  Point p{0.415, 0.31};
  Point q = system.eval(p);
  CHECK(dist(system.eval_inverse(q), p) < 1e-12);
}

}  // TEST_SUITE
