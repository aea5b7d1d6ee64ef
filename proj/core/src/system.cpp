#include "c0dynamo/system.hpp"

#include <cmath>
#include <stdexcept>

namespace c0dynamo {

namespace {

// Disks beyond this strip are computed on the fly (cold path for points with
// tiny x1).
constexpr std::int64_t kCachedStrips = 4096;

}  // namespace

AssembledSystem assemble(const SequenceSpec& spec, const LayoutParams& params,
                         BumpProfile profile) {
  params.validate();
  AssembledSystem s;
  s.params_ = params;
  s.spec_ = spec;
  s.profile_ = profile;
  s.disk_cache_.resize(kCachedStrips + 1);
  for (std::int64_t n = 2; n <= kCachedStrips; ++n)
    s.disk_cache_[static_cast<std::size_t>(n)] = layout_numeric(params, spec, n);
  return s;
}

double AssembledSystem::turns(std::int64_t n) const {
  if (n < 1) throw std::domain_error("turns: strip index must be >= 1");
  if (n > 1073) return 0.0;  // 2^-(n+1) underflows binary64
  return std::ldexp(1.0, -static_cast<int>(n + 1)) * orientation_;
}

std::optional<TwistMap> AssembledSystem::strip_twist(std::int64_t n) const {
  auto disk = layout_numeric(params_, spec_, n);
  if (!disk) return std::nullopt;
  return TwistMap{std::move(disk->center), disk->radius, turns(n), profile_};
}

const NumericDisk* AssembledSystem::cached_disk(std::int64_t n) const {
  const auto& slot = disk_cache_[static_cast<std::size_t>(n)];
  return slot ? &*slot : nullptr;
}

Point AssembledSystem::eval_oriented(Point p, int orientation) const {
  if (static_cast<int>(p.size()) != params_.dimension)
    throw std::invalid_argument("eval: point dimension mismatch");
  const double x1 = p[0];
  if (!(x1 >= 0.0) || x1 > 1.0) throw std::domain_error("eval: point outside the cube");
  // Identity on the limit segment, and on strips too deep for a binary64
  // twist angle.
  if (x1 == 0.0 || x1 < 0x1p-62) return p;
  const std::int64_t n = strip_index(x1);
  const double q = turns(n) * orientation;
  if (q == 0.0) return p;
  if (n <= kCachedStrips) {
    if (const NumericDisk* disk = cached_disk(n))
      twist_kernel(p, disk->center, disk->radius, q, profile_);
    return p;
  }
  auto disk = layout_numeric(params_, spec_, n);
  if (disk) twist_kernel(p, disk->center, disk->radius, q, profile_);
  return p;
}

Point AssembledSystem::eval(Point p) const { return eval_oriented(std::move(p), 1); }

Point AssembledSystem::eval_inverse(Point p) const { return eval_oriented(std::move(p), -1); }

Point AssembledSystem::iterate(Point p, std::int64_t k) const {
  if (k >= 0)
    for (std::int64_t i = 0; i < k; ++i) p = eval(std::move(p));
  else
    for (std::int64_t i = 0; i < -k; ++i) p = eval_inverse(std::move(p));
  return p;
}

AssembledSystem AssembledSystem::inverted() const {
  AssembledSystem s = *this;
  s.orientation_ = -orientation_;
  return s;
}

}  // namespace c0dynamo
