#pragma once

#include "c0dynamo/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace c0dynamo {

// Element of Q + sum_s Q*xi_s where the symbols xi_s (e.g. "sqrt2", "pi")
// stand for reals that are linearly independent over Q together with 1.
// Arithmetic is exact; the symbols are never evaluated except in approx().
class FormalReal {
 public:
  FormalReal() = default;
  explicit FormalReal(Rat rational_part) : rational_(std::move(rational_part)) {}

  static FormalReal symbol(const std::string& name, const Rat& coeff = Rat(1));

  // "1/2 + 3*sqrt2 - sqrt3". Terms are joined by + or -; each term is a
  // rational, a symbol, or rational*symbol. Symbols match
  // [A-Za-z_][A-Za-z0-9_]* except the reserved "1".
  static FormalReal parse(const std::string& text);
  std::string str() const;  // canonical; parse(str()) == *this

  const Rat& rational() const { return rational_; }
  // Irrational coefficients, zero entries pruned.
  const std::map<std::string, Rat>& terms() const { return terms_; }
  Rat coefficient(const std::string& name) const;
  bool is_rational() const { return terms_.empty(); }

  FormalReal& operator+=(const FormalReal& other);
  FormalReal& operator-=(const FormalReal& other);
  friend FormalReal operator+(FormalReal a, const FormalReal& b) { return a += b; }
  friend FormalReal operator-(FormalReal a, const FormalReal& b) { return a -= b; }
  FormalReal operator*(const Rat& c) const;
  bool operator==(const FormalReal& other) const = default;

  // Rational part reduced into [0, 1).
  FormalReal mod1() const;

  // Numeric value; throws std::domain_error for symbols missing from the
  // table.
  double approx(const std::map<std::string, double>& symbol_values = default_symbol_values()) const;
  static const std::map<std::string, double>& default_symbol_values();

 private:
  void prune();
  Rat rational_;
  std::map<std::string, Rat> terms_;
};

// Rotation v -> v + rho on T^2 = R^2/Z^2.
struct TorusRotation {
  FormalReal x, y;
  TorusRotation mod1() const { return {x.mod1(), y.mod1()}; }
  bool operator==(const TorusRotation& other) const = default;
};

// Minimal iff 1, x, y are linearly independent over Q, i.e. the 2 x S matrix
// of irrational coefficients has rank 2.
bool is_minimal(const TorusRotation& rho);

struct Mat2Z {
  BigInt a = 1, b = 0, c = 0, d = 1;  // row-major [[a, b], [c, d]]
  BigInt det() const { return a * d - b * c; }
  bool operator==(const Mat2Z& other) const = default;
};

struct Mat2Q {
  Rat a, b, c, d;
};

// Conjugating data: sigma = A * rho + shift before any mod-1 reduction, so
// the witness replays exactly on canonical inputs.
struct UnimodularWitness {
  Mat2Z matrix;
  std::array<BigInt, 2> shift{BigInt(0), BigInt(0)};
};

// (A * rho + shift) mod Z^2. Throws std::invalid_argument unless |det A| = 1.
TorusRotation apply_unimodular(const Mat2Z& A, const TorusRotation& rho);
TorusRotation apply_unimodular(const UnimodularWitness& w, const TorusRotation& rho);

// Why a conjugacy test failed. Minimality forces a unique rational matrix A
// with A * rho matching sigma on irrational parts; the stages report the
// first of its obstructions, in this order.
enum class RefutationStage {
  None,
  NoRationalSolution,       // the linear system for A is inconsistent
  NonIntegralMatrix,        // A exists over Q but not over Z
  DeterminantNotUnimodular, // A integral, |det A| != 1
  RationalPartMismatch,     // A in GL(2,Z) but A*rho != sigma mod Z^2
};

std::string refutation_stage_name(RefutationStage stage);

struct ConjugacyDecision {
  bool conjugate = false;
  RefutationStage stage = RefutationStage::None;
  // The forced matrix, present from stage NonIntegralMatrix on (and for
  // successful decisions, where it is integral).
  std::optional<Mat2Q> forced;
  // Conjugating matrix and shift when conjugate.
  std::optional<UnimodularWitness> witness;
};

// Classification of minimal rotations up to topological conjugacy: rho and
// sigma are conjugate iff sigma = A * rho mod Z^2 for some A in GL(2,Z).
// Throws std::invalid_argument unless both inputs are minimal.
ConjugacyDecision decide_conjugacy(const TorusRotation& rho, const TorusRotation& sigma);

enum class FixedLocusKind { FullTorus, Lines, Points };

// { v : normal . v = offset (mod 1) }, normal primitive.
struct FixedLine {
  std::array<BigInt, 2> normal;
  Rat offset;
};

struct FixedLocus {
  FixedLocusKind kind = FixedLocusKind::FullTorus;
  std::vector<FixedLine> lines;                // Lines only
  std::vector<std::array<Rat, 2>> points;      // Points only, reps in [0,1)^2
};

// Fixed points of the endomorphism v -> A v mod Z^2 for any integer matrix:
// solutions of (A - I) v = 0 mod Z^2. Full torus when A = I; a union of
// parallel closed geodesics when A - I has rank 1; |det(A - I)| torsion
// points when invertible.
FixedLocus fixed_locus(const Mat2Z& A);

// All of GL(2,Z) with entries in [-height, height], deterministic order.
std::vector<Mat2Z> unimodular_matrices(std::int64_t height);

// Distinct values of A * rho mod Z^2 over that family, sorted by canonical
// text key.
std::vector<TorusRotation> orbit_sample(const TorusRotation& rho, std::int64_t height);

}  // namespace c0dynamo
