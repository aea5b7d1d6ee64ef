#include "c0dynamo/torus.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

using namespace c0dynamo;

namespace {

FormalReal fr(const std::string& text) { return FormalReal::parse(text); }

}  // namespace

TEST_SUITE("formal reals") {

TEST_CASE("parse accepts rationals, symbols, and products") {
  CHECK(fr("1/2").rational() == Rat(1, 2));
  CHECK(fr("1/2").is_rational());
  CHECK(fr("sqrt2").coefficient("sqrt2") == Rat(1));
  CHECK(fr("3*sqrt2").coefficient("sqrt2") == Rat(3));
  CHECK(fr("1/2+3*sqrt2-sqrt3").coefficient("sqrt3") == Rat(-1));
  CHECK(fr("2/4").rational() == Rat(1, 2));
  CHECK(fr(" 1/2 + 1*sqrt2 ") == fr("1/2+sqrt2"));
  CHECK(fr("-sqrt2").coefficient("sqrt2") == Rat(-1));
  CHECK(fr("sqrt2-sqrt2").is_rational());
  CHECK(fr("0") == FormalReal(Rat(0)));
}

TEST_CASE("parse rejects garbage") {
  for (const char* bad : {"", "+", "1/0", "2**sqrt2", "sqrt2*2", "1..5", "2sqrt", "sqrt2!",
                          "*sqrt2", "1*1"}) {
    CHECK_THROWS_AS(fr(bad), std::invalid_argument);
  }
}

TEST_CASE("str is canonical") {
  for (const char* text : {"0", "1/2", "sqrt2", "-sqrt2", "1/2 + sqrt2", "2 - 3*sqrt2",
                           "1/3 + sqrt2 - 5/2*sqrt3"}) {
    FormalReal v = fr(text);
    CHECK(FormalReal::parse(v.str()) == v);
  }
  CHECK(fr("sqrt3+sqrt2").str() == fr("sqrt2+sqrt3").str());
  CHECK(fr("1/2+0*sqrt2").str() == "1/2");
}

TEST_CASE("arithmetic is exact and prunes zeros") {
  FormalReal a = fr("1/2+sqrt2");
  FormalReal b = fr("1/2-sqrt2");
  CHECK((a + b) == FormalReal(Rat(1)));
  CHECK((a - b) == fr("2*sqrt2"));
  CHECK((a * Rat(2)) == fr("1+2*sqrt2"));
  CHECK((a * Rat(0)).is_rational());
}

TEST_CASE("mod1 reduces only the rational part") {
  CHECK(fr("7/2").mod1() == fr("1/2"));
  CHECK(fr("-1/4").mod1() == fr("3/4"));
  CHECK(fr("-1/4+sqrt2").mod1() == fr("3/4+sqrt2"));
  CHECK(fr("3").mod1() == FormalReal(Rat(0)));
  CHECK(fr("sqrt2").mod1() == fr("sqrt2"));
}

TEST_CASE("approx evaluates against the symbol table") {
  CHECK(fr("sqrt2").approx() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fr("1/2+2*sqrt3").approx() ==
        doctest::Approx(0.5 + 2 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(fr("xi").approx(), std::domain_error);
  std::map<std::string, double> table{{"xi", 0.25}};
  CHECK(fr("2*xi").approx(table) == doctest::Approx(0.5));
}

}  // TEST_SUITE

TEST_SUITE("torus") {

TEST_CASE("minimality is rank 2 over the rationals") {
  CHECK(is_minimal({fr("sqrt2"), fr("sqrt3")}));
  CHECK(is_minimal({fr("1/2+sqrt2"), fr("sqrt2+sqrt3")}));
  CHECK_FALSE(is_minimal({fr("1/2"), fr("sqrt3")}));
  CHECK_FALSE(is_minimal({fr("sqrt2"), fr("2*sqrt2")}));
  CHECK_FALSE(is_minimal({fr("sqrt2"), fr("1/3")}));
  CHECK_FALSE(is_minimal({fr("1/2"), fr("1/3")}));
  // dependent combination x + y rational
  CHECK_FALSE(is_minimal({fr("sqrt2"), fr("1/2-sqrt2")}));
}

TEST_CASE("apply_unimodular demands a unimodular matrix") {
  TorusRotation rho{fr("sqrt2"), fr("sqrt3")};
  Mat2Z doubling{BigInt(2), BigInt(0), BigInt(0), BigInt(1)};
  CHECK_THROWS_AS(apply_unimodular(doubling, rho), std::invalid_argument);
  Mat2Z shear{BigInt(1), BigInt(1), BigInt(0), BigInt(1)};
  TorusRotation image = apply_unimodular(shear, rho);
  CHECK(image.x == fr("sqrt2+sqrt3").mod1());
  CHECK(image.y == fr("sqrt3"));
}

TEST_CASE("identity pair is conjugate via the identity") {
  TorusRotation rho{fr("sqrt2"), fr("sqrt3")};
  ConjugacyDecision d = decide_conjugacy(rho, rho);
  CHECK(d.conjugate);
  CHECK(d.stage == RefutationStage::None);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->matrix == Mat2Z{});
  CHECK(d.witness->shift[0] == 0);
  CHECK(d.witness->shift[1] == 0);
}

TEST_CASE("conjugate pair with shift replays exactly") {
  TorusRotation rho{fr("3/4+sqrt2"), fr("1/2+sqrt3")};
  Mat2Z shear{BigInt(1), BigInt(1), BigInt(0), BigInt(1)};
  // shear * rho = (5/4 + sqrt2 + sqrt3, 1/2 + sqrt3); canonicalizing drops 1
  TorusRotation sigma = apply_unimodular(shear, rho);
  CHECK(sigma.x == fr("1/4+sqrt2+sqrt3"));
  ConjugacyDecision d = decide_conjugacy(rho, sigma);
  REQUIRE(d.conjugate);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->matrix == shear);
  CHECK(d.witness->shift[0] == -1);
  CHECK(d.witness->shift[1] == 0);
  TorusRotation replay{
      rho.x * Rat(d.witness->matrix.a) + rho.y * Rat(d.witness->matrix.b) +
          FormalReal(Rat(d.witness->shift[0])),
      rho.x * Rat(d.witness->matrix.c) + rho.y * Rat(d.witness->matrix.d) +
          FormalReal(Rat(d.witness->shift[1]))};
  CHECK(replay == sigma);  // no mod-1 reduction needed
  CHECK(apply_unimodular(*d.witness, rho) == sigma);
}

TEST_CASE("no rational solution when sigma uses new symbols") {
  ConjugacyDecision d =
      decide_conjugacy({fr("sqrt2"), fr("sqrt3")}, {fr("sqrt5"), fr("sqrt3")});
  CHECK_FALSE(d.conjugate);
  CHECK(d.stage == RefutationStage::NoRationalSolution);
  CHECK_FALSE(d.forced.has_value());
}

TEST_CASE("non-integral forced matrix is refuted with evidence") {
  ConjugacyDecision d =
      decide_conjugacy({fr("sqrt2"), fr("sqrt3")}, {fr("1/2*sqrt2"), fr("sqrt3")});
  CHECK_FALSE(d.conjugate);
  CHECK(d.stage == RefutationStage::NonIntegralMatrix);
  REQUIRE(d.forced.has_value());
  CHECK(d.forced->a == Rat(1, 2));
}

TEST_CASE("determinant obstruction reports the forced matrix") {
  ConjugacyDecision d =
      decide_conjugacy({fr("sqrt2"), fr("sqrt3")}, {fr("2*sqrt2"), fr("sqrt3")});
  CHECK_FALSE(d.conjugate);
  CHECK(d.stage == RefutationStage::DeterminantNotUnimodular);
  REQUIRE(d.forced.has_value());
  CHECK(d.forced->a == Rat(2));
  CHECK(d.forced->b == Rat(0));
  CHECK(d.forced->c == Rat(0));
  CHECK(d.forced->d == Rat(1));
}

TEST_CASE("rational part obstruction") {
  ConjugacyDecision d =
      decide_conjugacy({fr("sqrt2"), fr("sqrt3")}, {fr("1/2+sqrt2"), fr("sqrt3")});
  CHECK_FALSE(d.conjugate);
  CHECK(d.stage == RefutationStage::RationalPartMismatch);
  REQUIRE(d.forced.has_value());
}

TEST_CASE("non-minimal inputs are rejected") {
  CHECK_THROWS_AS(decide_conjugacy({fr("1/2"), fr("sqrt3")}, {fr("sqrt2"), fr("sqrt3")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(decide_conjugacy({fr("sqrt2"), fr("sqrt3")}, {fr("sqrt2"), fr("2*sqrt2")}),
                  std::invalid_argument);
}

TEST_CASE("stage names are stable") {
  CHECK(refutation_stage_name(RefutationStage::None) == "none");
  CHECK(refutation_stage_name(RefutationStage::NoRationalSolution) == "no_rational_solution");
  CHECK(refutation_stage_name(RefutationStage::NonIntegralMatrix) == "non_integral_matrix");
  CHECK(refutation_stage_name(RefutationStage::DeterminantNotUnimodular) ==
        "determinant_not_unimodular");
  CHECK(refutation_stage_name(RefutationStage::RationalPartMismatch) ==
        "rational_part_mismatch");
}

TEST_CASE("unimodular matrix family") {
  auto h1 = unimodular_matrices(1);
  CHECK(!h1.empty());
  std::set<std::string> seen;
  for (const Mat2Z& m : h1) {
    CHECK(rat_abs(Rat(m.det())) == Rat(1));
    for (const BigInt& e : {m.a, m.b, m.c, m.d}) {
      CHECK(e >= -1);
      CHECK(e <= 1);
    }
    seen.insert(m.a.str() + "," + m.b.str() + "," + m.c.str() + "," + m.d.str());
  }
  CHECK(seen.size() == h1.size());  // no duplicates
  CHECK(unimodular_matrices(1) == h1);  // deterministic
  auto h2 = unimodular_matrices(2);
  CHECK(h2.size() > h1.size());
  CHECK_THROWS_AS(unimodular_matrices(0), std::invalid_argument);
  CHECK_THROWS_AS(unimodular_matrices(17), std::invalid_argument);
}

TEST_CASE("orbit sample is deduplicated, sorted, and conjugate throughout") {
  TorusRotation rho{fr("sqrt2"), fr("sqrt3")};
  auto orbit = orbit_sample(rho, 1);
  CHECK(orbit.size() > 1);
  std::set<std::string> keys;
  for (const TorusRotation& image : orbit) {
    CHECK(keys.insert(image.x.str() + "|" + image.y.str()).second);
    CHECK(decide_conjugacy(rho, image).conjugate);
  }
  auto again = orbit_sample(rho, 1);
  REQUIRE(again.size() == orbit.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) CHECK(again[i] == orbit[i]);
}

}  // TEST_SUITE

TEST_SUITE("fixed locus") {

TEST_CASE("identity fixes the whole torus") {
  FixedLocus locus = fixed_locus(Mat2Z{});
  CHECK(locus.kind == FixedLocusKind::FullTorus);
  CHECK(locus.lines.empty());
  CHECK(locus.points.empty());
}

TEST_CASE("swap fixes the diagonal") {
  FixedLocus locus = fixed_locus({BigInt(0), BigInt(1), BigInt(1), BigInt(0)});
  REQUIRE(locus.kind == FixedLocusKind::Lines);
  REQUIRE(locus.lines.size() == 1);
  // x - y = 0 up to sign normalization
  CHECK(locus.lines[0].normal[0] == 1);
  CHECK(locus.lines[0].normal[1] == -1);
  CHECK(locus.lines[0].offset == Rat(0));
}

TEST_CASE("shear by two fixes two horizontal circles") {
  FixedLocus locus = fixed_locus({BigInt(1), BigInt(2), BigInt(0), BigInt(1)});
  REQUIRE(locus.kind == FixedLocusKind::Lines);
  CHECK(locus.lines.size() == 2);
  std::set<std::string> offsets;
  for (const FixedLine& line : locus.lines) {
    CHECK(line.normal[0] == 0);
    CHECK(line.normal[1] == 1);
    offsets.insert(format_rational(line.offset));
  }
  CHECK(offsets == std::set<std::string>{"0", "1/2"});
}

TEST_CASE("negation fixes the 2-torsion points") {
  FixedLocus locus = fixed_locus({BigInt(-1), BigInt(0), BigInt(0), BigInt(-1)});
  REQUIRE(locus.kind == FixedLocusKind::Points);
  REQUIRE(locus.points.size() == 4);
  std::set<std::string> got;
  for (const auto& p : locus.points)
    got.insert(format_rational(p[0]) + "," + format_rational(p[1]));
  CHECK(got == std::set<std::string>{"0,0", "0,1/2", "1/2,0", "1/2,1/2"});
}

TEST_CASE("rotation by ninety degrees fixes two points") {
  FixedLocus locus = fixed_locus({BigInt(0), BigInt(-1), BigInt(1), BigInt(0)});
  REQUIRE(locus.kind == FixedLocusKind::Points);
  CHECK(locus.points.size() == 2);
}

TEST_CASE("every reported point is genuinely fixed") {
  for (const Mat2Z& A : {Mat2Z{BigInt(2), BigInt(1), BigInt(1), BigInt(1)},
                         Mat2Z{BigInt(3), BigInt(-2), BigInt(1), BigInt(4)},
                         Mat2Z{BigInt(-2), BigInt(5), BigInt(0), BigInt(3)}}) {
    FixedLocus locus = fixed_locus(A);
    REQUIRE(locus.kind == FixedLocusKind::Points);
    Rat expected = rat_abs(Rat((A.a - 1) * (A.d - 1) - A.b * A.c));
    CHECK(Rat(BigInt(locus.points.size())) == expected);
    for (const auto& p : locus.points) {
      Rat fx = Rat(A.a) * p[0] + Rat(A.b) * p[1] - p[0];
      Rat fy = Rat(A.c) * p[0] + Rat(A.d) * p[1] - p[1];
      // integrality of (A - I) p is the fixed-point condition mod Z^2
      CHECK(denominator(fx) == 1);
      CHECK(denominator(fy) == 1);
      CHECK(p[0] >= 0);
      CHECK(p[0] < 1);
      CHECK(p[1] >= 0);
      CHECK(p[1] < 1);
    }
  }
}

TEST_CASE("non-unimodular input is fine here") {
  FixedLocus locus = fixed_locus({BigInt(3), BigInt(0), BigInt(0), BigInt(3)});
  REQUIRE(locus.kind == FixedLocusKind::Points);
  CHECK(locus.points.size() == 4);
}

}  // TEST_SUITE
