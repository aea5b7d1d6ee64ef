#pragma once

#include "c0dynamo/rational.hpp"
#include "c0dynamo/sequence.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace c0dynamo {

using Point = std::vector<double>;
using RatPoint = std::vector<Rat>;

// H_n = [1/(n+1), 1/n] x [0,1]^(d-1). Shared boundary 1/n belongs to strip n.
struct Strip {
  std::int64_t index;
  Rat lo;  // 1/(n+1)
  Rat hi;  // 1/n
};

Strip strip(std::int64_t n);

// Midline k(n) = (1/n + 1/(n+1)) / 2.
Rat strip_midline(std::int64_t n);

// Exact on the binary64 value of x1. Throws std::domain_error unless
// 0 < x1 <= 1 (and the index is representable).
std::int64_t strip_index(double x1);
std::int64_t strip_index(const Rat& x1);

// Built-in rules.
Rat quarter_radius(std::int64_t n);  // 1/(4n(n+1)), a quarter of the strip width
Rat dyadic_dense(std::int64_t n);    // breadth-first dyadic enumeration of (1/4, 3/4)

using RadiusRule = std::function<Rat(std::int64_t)>;
using DenseRule = std::function<Rat(std::int64_t)>;

// Name -> rule registries ("quarter", "dyadic" are pre-registered).
void register_radius_rule(const std::string& name, RadiusRule rule);
void register_dense_rule(const std::string& name, DenseRule rule);
RadiusRule radius_rule(const std::string& name);
DenseRule dense_rule(const std::string& name);

struct LayoutParams {
  int dimension = 2;
  std::string radius_rule = "quarter";
  std::string dense_rule = "dyadic";

  Rat radius(std::int64_t n) const;
  Rat dense(std::int64_t n) const;
  void validate() const;
};

struct DiskSpec {
  RatPoint center;
  Rat radius;
};

struct NumericDisk {
  Point center;
  double radius = 0.0;
};

// Disk of strip n: none for n = 1; even n = 2j carries alpha(j), odd
// n = 2j+1 carries the dense value p(j). Center (k(n), 1/2, ..., 1/2, v).
// Exact variant requires a decidable spec.
std::optional<DiskSpec> layout(const LayoutParams& params, const SequenceSpec& spec,
                               std::int64_t n);
std::optional<NumericDisk> layout_numeric(const LayoutParams& params, const SequenceSpec& spec,
                                          std::int64_t n);

struct ContainmentResult {
  bool contained = false;
  // True when decided by exact rational arithmetic; false for the numeric
  // fallback (opaque specs), which verifies within a small tolerance only.
  bool exact = false;
};

// Whether the closed layout ball lies in the open interior of H_n.
ContainmentResult containment_check(const LayoutParams& params, const SequenceSpec& spec,
                                    std::int64_t n);

}  // namespace c0dynamo
