#include "c0dynamo/sequence.hpp"

#include <algorithm>
#include <numeric>

namespace c0dynamo {

namespace {

void check_range(const std::vector<Rat>& values, const char* what) {
  const Rat lo(1, 4), hi(3, 4);
  for (const Rat& v : values)
    if (v < lo || v > hi)
      throw std::invalid_argument(std::string(what) + " value " + format_rational(v) +
                                  " outside [1/4, 3/4]");
}

}  // namespace

SequenceSpec SequenceSpec::eventually_constant(std::vector<Rat> prefix, Rat value) {
  check_range(prefix, "prefix");
  check_range({value}, "constant");
  SequenceSpec s;
  s.kind_ = SpecKind::EventuallyConstant;
  s.prefix_ = std::move(prefix);
  s.block_ = {std::move(value)};
  return s;
}

SequenceSpec SequenceSpec::periodic_tail(std::vector<Rat> prefix, std::vector<Rat> block) {
  if (block.empty()) throw std::invalid_argument("periodic_tail: empty block");
  check_range(prefix, "prefix");
  check_range(block, "block");
  SequenceSpec s;
  s.kind_ = SpecKind::PeriodicTail;
  s.prefix_ = std::move(prefix);
  s.block_ = std::move(block);
  return s;
}

SequenceSpec SequenceSpec::opaque(std::function<double(std::int64_t)> fn) {
  if (!fn) throw std::invalid_argument("opaque: null callback");
  SequenceSpec s;
  s.kind_ = SpecKind::Opaque;
  s.fn_ = std::move(fn);
  return s;
}

Rat SequenceSpec::value(std::int64_t j) const {
  if (j < 1) throw std::domain_error("sequence index must be >= 1");
  if (!decidable()) throw std::domain_error("opaque spec has no exact values");
  auto p = static_cast<std::int64_t>(prefix_.size());
  if (j <= p) return prefix_[static_cast<std::size_t>(j - 1)];
  auto idx = static_cast<std::size_t>((j - p - 1) % static_cast<std::int64_t>(block_.size()));
  return block_[idx];
}

double SequenceSpec::value_approx(std::int64_t j) const {
  if (j < 1) throw std::domain_error("sequence index must be >= 1");
  if (kind_ == SpecKind::Opaque) return fn_(j);
  return to_double(value(j));
}

C0Decision c0_equivalent(const SequenceSpec& a, const SequenceSpec& b) {
  C0Decision d;
  if (!a.decidable() || !b.decidable()) {
    d.verdict = C0Verdict::UndecidableForKind;
    return d;
  }
  const std::int64_t L = std::max(a.prefix_length(), b.prefix_length());
  const std::int64_t P = std::lcm(a.period(), b.period());
  // Beyond L both sequences are periodic, so the difference has period P:
  // it tends to 0 iff it vanishes on one full period.
  for (std::int64_t j = L + 1; j <= L + P; ++j) {
    if (a.value(j) != b.value(j)) {
      d.verdict = C0Verdict::NotEquivalent;
      d.refute_index = j;
      d.refute_gap = rat_abs(a.value(j) - b.value(j));
      return d;
    }
  }
  d.verdict = C0Verdict::Equivalent;
  std::int64_t t = L + 1;
  while (t > 1 && a.value(t - 1) == b.value(t - 1)) --t;
  d.tail_agreement_index = t;
  return d;
}

}  // namespace c0dynamo
