#pragma once

#include "c0dynamo/geometry.hpp"
#include "c0dynamo/maps.hpp"
#include "c0dynamo/sequence.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace c0dynamo {

// The full system: on the disk of strip n it twists with turns 2^-(n+1),
// elsewhere (including every cube face and the segment {x1 = 0}) it is the
// identity. Immutable after construction; eval is safe to call concurrently.
class AssembledSystem {
 public:
  const LayoutParams& params() const { return params_; }
  const SequenceSpec& spec() const { return spec_; }
  BumpProfile profile() const { return profile_; }
  int dimension() const { return params_.dimension; }

  // 2^-(n+1) (0.0 once that underflows), signed by orientation.
  double turns(std::int64_t n) const;

  std::optional<TwistMap> strip_twist(std::int64_t n) const;

  Point eval(Point p) const;
  Point eval_inverse(Point p) const;
  // k may be negative; O(|k|) composition.
  Point iterate(Point p, std::int64_t k) const;

  // Same layout, negated turns.
  AssembledSystem inverted() const;

 private:
  friend AssembledSystem assemble(const SequenceSpec&, const LayoutParams&, BumpProfile);
  Point eval_oriented(Point p, int orientation) const;
  const NumericDisk* cached_disk(std::int64_t n) const;

  LayoutParams params_;
  SequenceSpec spec_ = SequenceSpec::opaque([](std::int64_t) { return 0.5; });
  BumpProfile profile_ = BumpProfile::Smooth;
  int orientation_ = 1;
  std::vector<std::optional<NumericDisk>> disk_cache_;  // index = strip
};

AssembledSystem assemble(const SequenceSpec& spec, const LayoutParams& params,
                         BumpProfile profile = BumpProfile::Smooth);

}  // namespace c0dynamo
