#pragma once

#include "c0dynamo/geometry.hpp"
#include "c0dynamo/maps.hpp"
#include "c0dynamo/sequence.hpp"
#include "c0dynamo/system.hpp"

#include <cstdint>
#include <vector>

namespace c0dynamo {

// One strip-local transport: moves the alpha-disk of an even strip onto the
// beta-disk inside a box strictly interior to the strip. All fields exact.
struct WitnessEntry {
  std::int64_t strip = 0;  // even
  std::vector<std::pair<Rat, Rat>> box;
  RatPoint source_center;
  RatPoint target_center;
  Rat radius;
  Rat margin;
};

// Conjugating homeomorphism candidate: transports on finitely many even
// strips, identity everywhere else (in particular on {x1 = 0} and for
// x1 beyond the deepest entry).
class ConjugacyWitness {
 public:
  ConjugacyWitness(int dimension, std::vector<WitnessEntry> entries);

  int dimension() const { return dimension_; }
  const std::vector<WitnessEntry>& entries() const { return entries_; }
  const WitnessEntry* entry(std::int64_t strip) const;

  Point apply(Point p) const;
  Point inverse(Point p) const;

  // Max sup-norm box diameter over entries at strips >= strip_min (0 when
  // none): bounds |apply(p) - p| for x1 below 1/strip_min.
  double max_box_diameter_from(std::int64_t strip_min) const;

 private:
  int dimension_ = 2;
  std::vector<WitnessEntry> entries_;      // sorted by strip
  std::vector<TransportMap> transports_;   // parallel to entries_
  std::int64_t max_strip_ = 0;
};

// Requires c0_equivalent(a, b) = Equivalent (throws RefusalError otherwise,
// carrying the decision). One entry per even strip 2n with a(n) != b(n);
// boxes have half-extent (3/2) r about the midline/chord, margin r/2.
ConjugacyWitness build_witness(const SequenceSpec& a, const SequenceSpec& b,
                               const LayoutParams& params);

// Max of |W(f_a(p)) - f_b(W(p))| over stratified samples (per strip 2..12:
// disk cores, twist supports, points off the disks, near witness boxes; plus
// points near the segment {x1 = 0}).
double verify_witness(const ConjugacyWitness& witness, const AssembledSystem& system_a,
                      const AssembledSystem& system_b, std::int64_t samples,
                      std::uint64_t seed = 20240817);

// Exact-arithmetic check that the witness matches both layouts: entries carry
// the alpha/beta centers of their strip (hence transport source onto target),
// and strips without entries have equal centers. Checks j = 1..j_max.
bool witness_centers_exact(const ConjugacyWitness& witness, const SequenceSpec& a,
                           const SequenceSpec& b, const LayoutParams& params, std::int64_t j_max);

struct ResidueClass {
  std::int64_t start = 0;
  std::int64_t period = 0;
};

// Refutation data for non-equivalent pairs: along the residue class the pair
// takes the constant values (a, b) with a != b, while the odd-strip disks at
// the dyadic indices approach a. Under any conjugacy the interleaved center
// sequences would have to converge on both sides; they converge only on the
// alpha side.
struct NonConjugacyCertificate {
  Rat value_a;
  Rat value_b;
  Rat gap;  // |value_a - value_b|
  ResidueClass residue;
  std::vector<std::int64_t> dense_indices;  // m_k with |p(m_k) - value_a| < 2^-k
};

// Requires c0_equivalent(a, b) = NotEquivalent (throws RefusalError when
// equivalent, std::invalid_argument for opaque specs). depth = minimum number
// of dense indices; extended automatically until 2^-depth < gap/2.
NonConjugacyCertificate build_certificate(const SequenceSpec& a, const SequenceSpec& b,
                                          const LayoutParams& params, std::int64_t depth = 12);

// All checks exact; returns false on any failure, never throws on bad data.
bool verify_certificate(const NonConjugacyCertificate& cert, const SequenceSpec& a,
                        const SequenceSpec& b, const LayoutParams& params);

}  // namespace c0dynamo
