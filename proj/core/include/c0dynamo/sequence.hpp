#pragma once

#include "c0dynamo/rational.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace c0dynamo {

enum class SpecKind { EventuallyConstant, PeriodicTail, Opaque };

// A sequence alpha: {1,2,...} -> [1/4, 3/4]. The two decidable kinds carry
// exact rationals; the opaque kind is a numeric callback and supports
// evaluation only.
class SequenceSpec {
 public:
  static SequenceSpec eventually_constant(std::vector<Rat> prefix, Rat value);
  static SequenceSpec periodic_tail(std::vector<Rat> prefix, std::vector<Rat> block);
  static SequenceSpec opaque(std::function<double(std::int64_t)> fn);

  SpecKind kind() const { return kind_; }
  bool decidable() const { return kind_ != SpecKind::Opaque; }

  // 1-indexed. Throws std::domain_error for opaque specs or j < 1.
  Rat value(std::int64_t j) const;
  double value_approx(std::int64_t j) const;

  std::int64_t prefix_length() const { return static_cast<std::int64_t>(prefix_.size()); }
  // Tail period; 1 for eventually-constant specs.
  std::int64_t period() const { return static_cast<std::int64_t>(block_.size()); }
  const std::vector<Rat>& prefix() const { return prefix_; }
  const std::vector<Rat>& block() const { return block_; }

 private:
  SequenceSpec() = default;
  SpecKind kind_ = SpecKind::Opaque;
  std::vector<Rat> prefix_;
  std::vector<Rat> block_;  // the constant tail value for EventuallyConstant
  std::function<double(std::int64_t)> fn_;
};

enum class C0Verdict { Equivalent, NotEquivalent, UndecidableForKind };

struct C0Decision {
  C0Verdict verdict = C0Verdict::UndecidableForKind;
  // Smallest T with alpha(j) == beta(j) for all j >= T (Equivalent only).
  std::int64_t tail_agreement_index = 0;
  // First differing tail position and its gap (NotEquivalent only).
  std::int64_t refute_index = 0;
  Rat refute_gap;
};

// Decides alpha(n) - beta(n) -> 0 exactly: both tails are compared over one
// lcm period after both preambles.
C0Decision c0_equivalent(const SequenceSpec& a, const SequenceSpec& b);

// Thrown when an operation declines its input (e.g. witness construction for
// a non-equivalent pair); carries the refuting decision.
struct RefusalError : std::runtime_error {
  RefusalError(std::string message, C0Decision decision_in)
      : std::runtime_error(std::move(message)), decision(std::move(decision_in)) {}
  C0Decision decision;
};

}  // namespace c0dynamo
