#include "c0dynamo/analysis.hpp"

#include "doctest.h"

#include <cmath>

using namespace c0dynamo;

namespace {

AssembledSystem make_system() {
  LayoutParams params;
  return assemble(SequenceSpec::periodic_tail({Rat(37, 100)}, {Rat(1, 2), Rat(3, 8)}), params);
}

CubeMap as_map(const AssembledSystem& system) {
  return [&system](const Point& p) { return system.eval(p); };
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("displacement support brackets the disk") {
  AssembledSystem system = make_system();
  LayoutParams params = system.params();
  const double r = to_double(params.radius(2));
  auto samples = displacement_scan(as_map(system), params, 2, r / 8);
  REQUIRE(!samples.empty());
  double lo = 1, hi = 0;
  for (const auto& s : samples) {
    if (s.displacement > 0) {
      lo = std::min(lo, s.t);
      hi = std::max(hi, s.t);
    }
  }
  // support is contained in the open ball of radius (2/3) r about 0.37
  CHECK(lo > 0.37 - r);
  CHECK(hi < 0.37 + r);
  CHECK(hi - lo > r / 2);
}

TEST_CASE("decode_strip recovers the exact center") {
  AssembledSystem system = make_system();
  DecodeReport rep = decode_strip(as_map(system), system.params(), 2, 1e-9);
  CHECK(rep.strip == 2);
  CHECK(std::abs(rep.center - 0.37) < 1e-6);
  CHECK(rep.period == 8);
  CHECK(rep.residual < 1e-9);
  CHECK(rep.support_lo < 0.37);
  CHECK(rep.support_hi > 0.37);
}

TEST_CASE("decode reads off the even strips") {
  AssembledSystem system = make_system();
  auto reports = decode(as_map(system), system.params(), 4, 1e-9);
  REQUIRE(reports.size() == 4);
  const double want[] = {0.37, 0.5, 0.375, 0.5};
  for (int j = 0; j < 4; ++j) {
    CHECK(reports[j].strip == 2 * (j + 1));
    CHECK(std::abs(reports[j].center - want[j]) < 1e-6);
    CHECK(reports[j].period == (std::int64_t(1) << (2 * j + 3)));
  }
  auto values = decoded_values(reports);
  REQUIRE(values.size() == 4);
  CHECK(values[0] == reports[0].center);
}

TEST_CASE("identity maps have empty strips") {
  LayoutParams params;
  CubeMap id = [](const Point& p) { return p; };
  CHECK_THROWS_AS(decode_strip(id, params, 2, 1e-9), EmptyStripError);
  try {
    decode_strip(id, params, 4, 1e-9);
    FAIL("expected EmptyStripError");
  } catch (const EmptyStripError& e) {
    CHECK(e.strip == 4);
  }
}

TEST_CASE("wrong return period is flagged") {
  AssembledSystem system = make_system();
  // the square of the map has period 4 on strip 2, not 8
  CubeMap squared = [&system](const Point& p) { return system.eval(system.eval(p)); };
  CHECK_THROWS_AS(decode_strip(squared, system.params(), 2, 1e-9), InvariantViolationError);
}

TEST_CASE("smoothness scan stays under the bound") {
  AssembledSystem system = make_system();
  for (std::int64_t m : {2, 3, 5}) {
    SmoothnessReport rep = smoothness_scan(system, m, 4000);
    CHECK(rep.strip == m);
    CHECK(rep.samples == 4000);
    CHECK(rep.violations == 0);
    CHECK(rep.max_quotient < rep.bound);
    CHECK(rep.max_quotient > 0.0);
    CHECK(rep.max_det_err_off_support < 1e-6);
    CHECK(rep.min_det > 0.9);
    CHECK(rep.bound == doctest::Approx(smoothness_bound(system.params(), m)));
  }
}

TEST_CASE("smoothness scan is deterministic in the seed") {
  AssembledSystem system = make_system();
  SmoothnessReport a = smoothness_scan(system, 3, 2000, 99);
  SmoothnessReport b = smoothness_scan(system, 3, 2000, 99);
  CHECK(a.max_quotient == b.max_quotient);
  SmoothnessReport c = smoothness_scan(system, 3, 2000, 100);
  CHECK(a.max_quotient != c.max_quotient);
}

TEST_CASE("the smoothness bound is exact and vanishes") {
  LayoutParams params;
  CHECK(smoothness_bound_scaled(params, 2) == Rat(3) * params.radius(2) / 8);
  Rat prev;
  bool first = true;
  for (std::int64_t m = 2; m <= 40; ++m) {
    Rat b = smoothness_bound_scaled(params, m);
    CHECK(b > 0);
    if (!first) CHECK(b < prev);
    prev = b;
    first = false;
  }
  CHECK(prev < Rat(1, BigInt(1) << 40));
  CHECK(smoothness_bound(params, 3) ==
        doctest::Approx(4 * (2 * M_PI / 16) * to_double(params.radius(3))));
}

TEST_CASE("jacobian of simple maps") {
  CubeMap id = [](const Point& p) { return p; };
  auto J = jacobian(id, {0.5, 0.5}, 1e-6);
  CHECK(J[0][0] == doctest::Approx(1.0));
  CHECK(J[0][1] == doctest::Approx(0.0));
  CHECK(J[1][1] == doctest::Approx(1.0));
  CHECK(determinant(J) == doctest::Approx(1.0));

  CubeMap shear = [](const Point& p) { return Point{p[0] + 0.5 * p[1], p[1]}; };
  auto S = jacobian(shear, {0.2, 0.2}, 1e-6);
  CHECK(S[0][1] == doctest::Approx(0.5));
  CHECK(determinant(S) == doctest::Approx(1.0));

  CHECK(determinant({{2.0, 0.0}, {0.0, 3.0}}) == doctest::Approx(6.0));
  CHECK(determinant({{0.0, 1.0}, {1.0, 0.0}}) == doctest::Approx(-1.0));
}

}  // TEST_SUITE
